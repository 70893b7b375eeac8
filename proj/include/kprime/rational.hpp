#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kprime {

/// Exact ratio num/den > 1 in lowest terms.
///
/// All "x divided by v" computations go through floor_div so that
/// pi(x / v) is evaluated as pi(floor(x * den / num)) without rounding.
class Rational {
public:
    Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den)
    {
        if (den == 0)
            throw std::invalid_argument("ratio denominator must be positive");
        if (std::gcd(num, den) != 1)
            throw std::invalid_argument("ratio " + to_string() + " is not in lowest terms");
        if (num <= den)
            throw std::invalid_argument("ratio " + to_string() + " must exceed 1");
    }

    /// The ratio (k+1)/k.
    static Rational successor_ratio(std::uint64_t k)
    {
        if (k == 0)
            throw std::invalid_argument("k must be positive");
        return Rational(k + 1, k);
    }

    /// Parses "P/Q" or a bare integer "P". The result must already be reduced.
    static Rational parse(std::string_view text)
    {
        auto read = [&](std::string_view part) {
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
            if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
                throw std::invalid_argument("cannot parse ratio '" + std::string(text) + "'");
            return value;
        };
        auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return Rational(read(text), 1);
        return Rational(read(text.substr(0, slash)), read(text.substr(slash + 1)));
    }

    std::uint64_t num() const noexcept { return num_; }
    std::uint64_t den() const noexcept { return den_; }

    long double value() const noexcept
    {
        return static_cast<long double>(num_) / static_cast<long double>(den_);
    }

    /// floor(x / v) = floor(x * den / num), exact for every 64-bit x.
    std::uint64_t floor_div(std::uint64_t x) const noexcept
    {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * den_ / num_);
    }

    /// ceil(x * v), exact.
    std::uint64_t ceil_mul(std::uint64_t x) const noexcept
    {
        auto prod = static_cast<unsigned __int128>(x) * num_;
        return static_cast<std::uint64_t>((prod + den_ - 1) / den_);
    }

    /// v / (v - 1) = num / (num - den).
    long double excess_factor() const noexcept
    {
        return static_cast<long double>(num_) / static_cast<long double>(num_ - den_);
    }

    std::string to_string() const
    {
        if (den_ == 1)
            return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::uint64_t num_;
    std::uint64_t den_;
};

} // namespace kprime
