#pragma once

// Brute-force oracles and reference fixtures. Nothing here touches the
// sieve or the Miller-Rabin test: primality is plain trial division.

#include "kprime/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kprime::testkit {

inline bool trial_division_is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0)
            return false;
    }
    return true;
}

/// Primality flags for 0..limit by trial division.
inline std::vector<bool> trial_division_flags(std::uint64_t limit)
{
    std::vector<bool> flags(limit + 1);
    for (std::uint64_t n = 0; n <= limit; ++n)
        flags[n] = trial_division_is_prime(n);
    return flags;
}

/// Smallest X in [2, x_max] such that (floor(x/v), x] holds >= m primes
/// for every x in [X, x_max]; nullopt if x_max itself fails.
inline std::optional<std::uint64_t> oracle_R(const Rational& v, std::uint64_t m, std::uint64_t x_max)
{
    if (x_max < 2)
        throw std::invalid_argument("x_max must be at least 2");
    const auto flags = trial_division_flags(x_max);
    auto count = [&](std::uint64_t x) {
        std::uint64_t c = 0;
        for (std::uint64_t p = v.floor_div(x) + 1; p <= x; ++p)
            c += flags[p];
        return c;
    };
    if (count(x_max) < m)
        return std::nullopt;
    std::uint64_t x = x_max;
    while (x > 2 && count(x - 1) >= m)
        --x;
    return x;
}

/// Smallest N in [2, n_max] such that (kn, (k+1)n) holds >= m primes for
/// every n in [N, n_max]; nullopt if n_max itself fails.
inline std::optional<std::uint64_t> oracle_N(std::uint64_t k, std::uint64_t m, std::uint64_t n_max)
{
    if (n_max < 2)
        throw std::invalid_argument("n_max must be at least 2");
    auto count = [&](std::uint64_t n) {
        std::uint64_t c = 0;
        for (std::uint64_t p = k * n + 1; p < (k + 1) * n; ++p)
            c += trial_division_is_prime(p);
        return c;
    };
    if (count(n_max) < m)
        return std::nullopt;
    std::uint64_t n = n_max;
    while (n > 2 && count(n - 1) >= m)
        --n;
    return n;
}

/// Smallest X such that prod_{x/v < p <= x} p >= x^m for every x in
/// [X, x_max]; nullopt if x_max itself fails. Uses its own schoolbook
/// big-integer product, independent of GMP.
inline std::optional<std::uint64_t> oracle_C(const Rational& v, std::uint64_t m, std::uint64_t x_max)
{
    if (x_max < 2)
        throw std::invalid_argument("x_max must be at least 2");
    const auto flags = trial_division_flags(x_max);
    // Little-endian base-2^32 limbs.
    auto holds = [&](std::uint64_t x) {
        std::vector<std::uint32_t> prod{1};
        auto mul = [](std::vector<std::uint32_t>& a, std::uint64_t f) {
            std::uint64_t carry = 0;
            for (auto& limb : a) {
                unsigned __int128 t = static_cast<unsigned __int128>(limb) * f + carry;
                limb = static_cast<std::uint32_t>(t);
                carry = static_cast<std::uint64_t>(t >> 32);
            }
            while (carry) {
                a.push_back(static_cast<std::uint32_t>(carry));
                carry >>= 32;
            }
        };
        for (std::uint64_t p = v.floor_div(x) + 1; p <= x; ++p) {
            if (flags[p])
                mul(prod, p);
        }
        std::vector<std::uint32_t> power{1};
        for (std::uint64_t i = 0; i < m; ++i)
            mul(power, x);
        if (prod.size() != power.size())
            return prod.size() > power.size();
        for (std::size_t i = prod.size(); i-- > 0;) {
            if (prod[i] != power[i])
                return prod[i] > power[i];
        }
        return true;
    };
    if (!holds(x_max))
        return std::nullopt;
    std::uint64_t x = x_max;
    while (x > 2 && holds(x - 1))
        --x;
    return x;
}

// ---------------------------------------------------------------------------
// Fixtures: "# <id> <source>" header, then one integer per line.
// ---------------------------------------------------------------------------

struct Fixture {
    std::string id;
    std::string source;
    std::vector<std::uint64_t> terms;
};

inline Fixture parse_fixture(std::istream& in)
{
    Fixture fx;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw std::runtime_error("fixture header missing");
    std::istringstream header(line.substr(2));
    header >> fx.id;
    std::getline(header >> std::ws, fx.source);
    if (fx.id.empty())
        throw std::runtime_error("fixture id missing");
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        fx.terms.push_back(std::stoull(line));
    }
    return fx;
}

inline Fixture load_fixture(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open fixture " + path.string());
    return parse_fixture(in);
}

/// All *.txt fixtures in a directory, keyed by id.
inline std::map<std::string, Fixture> load_fixtures(const std::filesystem::path& dir)
{
    std::map<std::string, Fixture> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".txt")
            continue;
        auto fx = load_fixture(entry.path());
        auto id = fx.id;
        out.emplace(std::move(id), std::move(fx));
    }
    if (out.empty())
        throw std::runtime_error("no fixtures in " + dir.string());
    return out;
}

} // namespace kprime::testkit
