#pragma once

#include "kprime/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kprime {

// ---------------------------------------------------------------------------
// Deterministic primality for 64-bit integers
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept
{
    std::uint64_t result = 1;
    base %= m;
    while (exp != 0) {
        if (exp & 1)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

// Strong probable-prime test to base a; n odd, n > 2.
inline bool is_strong_probable_prime(std::uint64_t n, std::uint64_t a) noexcept
{
    a %= n;
    if (a == 0)
        return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1)
        return true;
    for (int r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1)
            return true;
    }
    return false;
}

inline constexpr std::array<std::uint32_t, 15> small_primes{
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

} // namespace detail

/// True iff n is prime. Deterministic for every 64-bit n: the witness set
/// {2, 325, 9375, 28178, 450775, 9780504, 1795265022} has no strong
/// pseudoprime below 2^64.
inline bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return false;
    for (std::uint32_t p : detail::small_primes) {
        if (n == p)
            return true;
        if (n % p == 0)
            return false;
    }
    if (n < 53 * 53)
        return true;
    static constexpr std::array<std::uint64_t, 7> witnesses{
        2, 325, 9375, 28178, 450775, 9780504, 1795265022};
    for (std::uint64_t a : witnesses) {
        if (!detail::is_strong_probable_prime(n, a))
            return false;
    }
    return true;
}

/// Largest prime p <= n, or 0 if n < 2.
inline std::uint64_t prev_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return 0;
    if (n == 2)
        return 2;
    if ((n & 1) == 0)
        --n;
    for (; n >= 3; n -= 2) {
        if (is_prime(n))
            return n;
    }
    return 2;
}

// ---------------------------------------------------------------------------
// Segmented sieve and prime table
// ---------------------------------------------------------------------------

struct SieveOptions {
    /// Numbers covered by one sieve segment.
    std::size_t segment_size = std::size_t{1} << 18;
    /// Upper bound on the bytes a PrimeTable may occupy.
    std::size_t max_bytes = std::size_t{1} << 30;
};

/// Estimated storage for a table up to `limit` (prime list only).
inline std::size_t estimated_table_bytes(std::uint64_t limit) noexcept
{
    if (limit < 100)
        return 25 * sizeof(std::uint64_t);
    // pi(x) < 1.25506 x / ln x for x > 1.
    double count = 1.25506 * static_cast<double>(limit) / std::log(static_cast<double>(limit));
    return static_cast<std::size_t>(count + 1) * sizeof(std::uint64_t);
}

/// Calls emit(p) for every prime p in [2, limit] in increasing order.
template <typename Emit>
void segmented_sieve(std::uint64_t limit, std::size_t segment_size, Emit&& emit)
{
    if (limit < 2)
        return;
    if (segment_size < 64)
        segment_size = 64;

    auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(limit)));
    while (root * root > limit)
        --root;
    while ((root + 1) * (root + 1) <= limit)
        ++root;

    // Base primes up to sqrt(limit) with a plain sieve.
    std::vector<char> small(root + 1, 1);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!small[i])
            continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i)
            small[j] = 0;
    }

    std::vector<char> segment(segment_size);
    std::vector<std::uint64_t> next(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        next[i] = base[i] * base[i];

    for (std::uint64_t low = 0; low <= limit; low += segment_size) {
        std::uint64_t high = std::min<std::uint64_t>(low + segment_size - 1, limit);
        std::fill(segment.begin(), segment.end(), 1);
        for (std::size_t i = 0; i < base.size(); ++i) {
            std::uint64_t p = base[i];
            std::uint64_t j = next[i];
            for (; j <= high; j += p)
                segment[j - low] = 0;
            next[i] = j;
        }
        for (std::uint64_t n = std::max<std::uint64_t>(low, 2); n <= high; ++n) {
            if (segment[n - low])
                emit(n);
        }
        if (high == limit)
            break;
    }
}

/// Immutable list of all primes up to `limit` with exact pi(x) queries.
/// Safe for concurrent reads.
class PrimeTable {
public:
    explicit PrimeTable(std::uint64_t limit, const SieveOptions& options = {}) : limit_(limit)
    {
        if (limit < 2)
            throw std::invalid_argument("prime table limit must be at least 2");
        if (estimated_table_bytes(limit) > options.max_bytes)
            throw resource_limit_error("prime table up to " + std::to_string(limit) +
                                       " exceeds memory budget of " +
                                       std::to_string(options.max_bytes) + " bytes");
        primes_.reserve(estimated_table_bytes(limit) / sizeof(std::uint64_t));
        segmented_sieve(limit, options.segment_size,
                        [this](std::uint64_t p) { primes_.push_back(p); });
    }

    std::uint64_t limit() const noexcept { return limit_; }
    std::span<const std::uint64_t> primes() const noexcept { return primes_; }

    /// The n-th prime, 1-based.
    std::uint64_t nth(std::size_t n) const
    {
        if (n == 0 || n > primes_.size())
            throw resource_limit_error("prime index " + std::to_string(n) +
                                       " beyond table limit " + std::to_string(limit_));
        return primes_[n - 1];
    }

    /// pi(x), the number of primes <= x.
    std::uint64_t pi(std::uint64_t x) const
    {
        check(x);
        return static_cast<std::uint64_t>(
            std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
    }

    /// Number of primes p with lo < p < hi.
    std::uint64_t count_open(std::uint64_t lo, std::uint64_t hi) const
    {
        if (lo > hi)
            throw std::invalid_argument("interval bounds out of order");
        check(hi);
        if (hi - lo < 2)
            return 0;
        return pi(hi - 1) - pi(lo);
    }

    /// Number of primes p with lo <= p <= hi.
    std::uint64_t count_closed(std::uint64_t lo, std::uint64_t hi) const
    {
        if (lo > hi)
            throw std::invalid_argument("interval bounds out of order");
        check(hi);
        return pi(hi) - (lo == 0 ? 0 : pi(lo - 1));
    }

    /// Primes p with lo < p <= hi.
    std::span<const std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) const
    {
        if (lo > hi)
            throw std::invalid_argument("interval bounds out of order");
        check(hi);
        auto first = std::upper_bound(primes_.begin(), primes_.end(), lo);
        auto last = std::upper_bound(first, primes_.end(), hi);
        return {first, last};
    }

private:
    void check(std::uint64_t x) const
    {
        if (x > limit_)
            throw std::out_of_range("query " + std::to_string(x) + " exceeds table limit " +
                                    std::to_string(limit_));
    }

    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

inline PrimeTable build_table(std::uint64_t limit, const SieveOptions& options = {})
{
    return PrimeTable(limit, options);
}

inline std::uint64_t pi(const PrimeTable& table, std::uint64_t x) { return table.pi(x); }

inline std::uint64_t count_primes_open(const PrimeTable& table, std::uint64_t lo, std::uint64_t hi)
{
    return table.count_open(lo, hi);
}

namespace detail {

inline mpz_class product_tree(std::span<const std::uint64_t> values)
{
    if (values.empty())
        return 1;
    if (values.size() <= 16) {
        mpz_class acc = 1;
        for (std::uint64_t v : values) {
            mpz_class term;
            mpz_import(term.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
            acc *= term;
        }
        return acc;
    }
    auto half = values.size() / 2;
    return product_tree(values.first(half)) * product_tree(values.subspan(half));
}

} // namespace detail

/// Product of all primes p with lo < p <= hi; 1 for an empty range.
inline mpz_class primorial_segment(const PrimeTable& table, std::uint64_t lo, std::uint64_t hi)
{
    return detail::product_tree(table.primes_in(lo, hi));
}

/// x^e as a big integer.
inline mpz_class big_pow(std::uint64_t x, unsigned long e)
{
    mpz_class base;
    mpz_import(base.get_mpz_t(), 1, -1, sizeof x, 0, 0, &x);
    mpz_class result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), e);
    return result;
}

} // namespace kprime
