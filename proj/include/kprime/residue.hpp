#pragma once

#include "kprime/errors.hpp"
#include "kprime/intervals.hpp"
#include "kprime/prime_engine.hpp"
#include "kprime/rational.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kprime {

/// Primes p = residue (mod modulus), gcd(residue, modulus) = 1.
class ResidueClass {
public:
    ResidueClass(std::uint64_t modulus, std::uint64_t residue) : modulus_(modulus), residue_(residue)
    {
        if (modulus < 2)
            throw std::invalid_argument("modulus must be at least 2");
        if (residue >= modulus)
            throw std::invalid_argument("residue must be below the modulus");
        if (std::gcd(modulus, residue) != 1)
            throw std::invalid_argument("residue " + std::to_string(residue) + " mod " +
                                        std::to_string(modulus) + " is not coprime");
    }

    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint64_t residue() const noexcept { return residue_; }
    bool contains(std::uint64_t n) const noexcept { return n % modulus_ == residue_; }

    std::string to_string() const
    {
        return std::to_string(residue_) + " mod " + std::to_string(modulus_);
    }

private:
    std::uint64_t modulus_;
    std::uint64_t residue_;
};

/// Non-negative exact fraction, always reduced.
struct Fraction {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Fraction make(std::uint64_t num, std::uint64_t den)
    {
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        auto g = std::gcd(num, den);
        return {num / g, den / g};
    }

    /// Accepts "123", "12.375" or "99/8".
    static Fraction parse(std::string_view text)
    {
        auto fail = [&] {
            throw std::invalid_argument("cannot parse number '" + std::string(text) + "'");
        };
        auto read = [&](std::string_view part) {
            std::uint64_t value = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
            if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
                fail();
            return value;
        };
        if (auto slash = text.find('/'); slash != std::string_view::npos)
            return make(read(text.substr(0, slash)), read(text.substr(slash + 1)));
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            auto whole = text.substr(0, dot);
            auto frac = text.substr(dot + 1);
            if (frac.size() > 18)
                fail();
            std::uint64_t scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i)
                scale *= 10;
            std::uint64_t w = whole.empty() ? 0 : read(whole);
            std::uint64_t f = frac.empty() ? 0 : read(frac);
            return make(w * scale + f, scale);
        }
        return make(read(text), 1);
    }

    long double value() const noexcept
    {
        return static_cast<long double>(num) / static_cast<long double>(den);
    }
};

/// "For x >= x0 the interval (x, (1 + 1/delta) x] holds a P-prime."
struct SmallIntervalTheorem {
    std::uint64_t x0;
    Fraction delta;

    SmallIntervalTheorem(std::uint64_t x0_, Fraction delta_) : x0(x0_), delta(delta_)
    {
        if (x0 < 2)
            throw std::invalid_argument("x0 must be at least 2");
        if (delta.num == 0)
            throw std::invalid_argument("delta must be positive");
    }

    /// 1 + 1/delta = (delta.num + delta.den) / delta.num
    Fraction growth() const { return Fraction::make(delta.num + delta.den, delta.num); }

    /// All primes: (x, (1 + 1/28313999) x) holds a prime for x > 10726905419.
    static SmallIntervalTheorem ramare_saouter() { return {10726905420ULL, {28313999, 1}}; }

    /// Primes 1 mod 3: (x, 1.048 x) holds one for x >= 106706.
    /// 1 + 1/delta = 1.048 gives delta = 125/6.
    static SmallIntervalTheorem cullinan_hajir() { return {106706, {125, 6}}; }
};

namespace detail {

inline mpz_class to_mpz(std::uint64_t x)
{
    mpz_class r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof x, 0, 0, &x);
    return r;
}

} // namespace detail

/// Exact test of (1 + 1/delta)^m < v: then m chained sub-intervals
/// (y_i, y_{i+1}], y_{i+1} = (1 + 1/delta) y_i starting at y_0 = x / v
/// end strictly before x.
inline bool chain_fits(const Rational& v, const SmallIntervalTheorem& thm, std::uint64_t m)
{
    const Fraction g = thm.growth();
    mpz_class lhs = big_pow(g.num, static_cast<unsigned long>(m)) * detail::to_mpz(v.den());
    mpz_class rhs = big_pow(g.den, static_cast<unsigned long>(m)) * detail::to_mpz(v.num());
    return lhs < rhs;
}

/// Largest m with (1 + 1/delta)^m < v.
inline std::uint64_t capacity(const Rational& v, const SmallIntervalTheorem& thm)
{
    const Fraction g = thm.growth();
    const long double log_v = std::log(static_cast<long double>(v.num())) -
                              std::log(static_cast<long double>(v.den()));
    const long double log_g =
        std::log1p(static_cast<long double>(thm.delta.den) / static_cast<long double>(thm.delta.num));
    auto m = static_cast<std::uint64_t>(std::floor(log_v / log_g));

    // Boundary recheck in exact arithmetic: g^m < v and g^(m+1) >= v.
    mpz_class gn = detail::to_mpz(g.num), gd = detail::to_mpz(g.den);
    mpz_class vn = detail::to_mpz(v.num()), vd = detail::to_mpz(v.den());
    mpz_class lhs = big_pow(g.num, static_cast<unsigned long>(m)) * vd;
    mpz_class rhs = big_pow(g.den, static_cast<unsigned long>(m)) * vn;
    while (m > 0 && lhs >= rhs) {
        --m;
        lhs = big_pow(g.num, static_cast<unsigned long>(m)) * vd;
        rhs = big_pow(g.den, static_cast<unsigned long>(m)) * vn;
    }
    while (lhs * gn < rhs * gd) {
        ++m;
        lhs *= gn;
        rhs *= gd;
    }
    return m;
}

/// pi_P(x): primes p <= x in the class.
inline std::uint64_t pi_P(const PrimeTable& table, const ResidueClass& P, std::uint64_t x)
{
    std::uint64_t count = 0;
    for (std::uint64_t p : table.primes_in(0, x)) {
        if (P.contains(p))
            ++count;
    }
    return count;
}

/// P-primes of a table, in increasing order.
inline std::vector<std::uint64_t> class_primes(const PrimeTable& table, const ResidueClass& P,
                                               std::uint64_t up_to)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : table.primes_in(0, std::min(up_to, table.limit()))) {
        if (P.contains(p))
            out.push_back(p);
    }
    return out;
}

/// Bound ceil(x0 * v) past which (x / v, x] holds m chained P-primes.
inline std::uint64_t residue_bound(const Rational& v, const SmallIntervalTheorem& thm)
{
    return v.ceil_mul(thm.x0);
}

/// First m_max (v, P)-Ramanujan numbers by descent from ceil(x0 * v).
inline std::vector<std::uint64_t> residue_sequence(const PrimeTable& table, const ResidueClass& P,
                                                   const Rational& v, std::uint64_t m_max,
                                                   const SmallIntervalTheorem& thm)
{
    if (m_max == 0)
        throw std::invalid_argument("m_max must be positive");
    if (!chain_fits(v, thm, m_max))
        throw capacity_exceeded_error("m=" + std::to_string(m_max) + " exceeds capacity " +
                                      std::to_string(capacity(v, thm)) + " for v=" +
                                      v.to_string());
    const std::uint64_t bound = residue_bound(v, thm);
    if (bound - 1 > table.limit())
        throw resource_limit_error("residue descent needs primes up to " +
                                   std::to_string(bound - 1));

    const auto primes = class_primes(table, P, bound - 1);
    std::vector<std::uint64_t> latest(m_max, 0);
    std::size_t upper = 0, lower = 0;
    for (std::uint64_t x = 1; x < bound; ++x) {
        while (upper < primes.size() && primes[upper] <= x)
            ++upper;
        const std::uint64_t y = v.floor_div(x);
        while (lower < primes.size() && primes[lower] <= y)
            ++lower;
        const std::uint64_t count = upper - lower;
        if (count < m_max)
            latest[count] = x;
    }

    std::vector<std::uint64_t> terms(m_max);
    std::uint64_t last = 0;
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        last = std::max(last, latest[m - 1]);
        const std::uint64_t term = std::max<std::uint64_t>(last + 1, 2);
        if (!is_prime(term) || !P.contains(term))
            throw std::logic_error("(v,P)-Ramanujan number " + std::to_string(term) +
                                   " is not a P-prime");
        terms[m - 1] = term;
    }
    return terms;
}

inline std::vector<std::uint64_t> residue_sequence(const ResidueClass& P, const Rational& v,
                                                   std::uint64_t m_max,
                                                   const SmallIntervalTheorem& thm,
                                                   const SieveOptions& options = {})
{
    PrimeTable table(std::max<std::uint64_t>(residue_bound(v, thm), 2), options);
    return residue_sequence(table, P, v, m_max, thm);
}

inline std::uint64_t ramanujan_number_P(const ResidueClass& P, const Rational& v, std::uint64_t m,
                                        const SmallIntervalTheorem& thm,
                                        const SieveOptions& options = {})
{
    return residue_sequence(P, v, m, thm, options).back();
}

/// First m_max values of N_k^(P)(m), descending below ceil(R^(P)/(k+1)).
inline std::vector<std::uint64_t> nk_sequence_P(const ResidueClass& P, std::uint64_t k,
                                                std::uint64_t m_max,
                                                const SmallIntervalTheorem& thm,
                                                const SieveOptions& options = {})
{
    const Rational v = Rational::successor_ratio(k);
    PrimeTable table(residue_bound(v, thm) + k + 1, options);
    const auto r = residue_sequence(table, P, v, m_max, thm);
    const auto primes = class_primes(table, P, table.limit());
    auto pi_class = [&](std::uint64_t x) {
        return static_cast<std::uint64_t>(std::upper_bound(primes.begin(), primes.end(), x) -
                                          primes.begin());
    };

    std::vector<std::uint64_t> values;
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        const std::uint64_t start = nk_upper_from(k, r[m - 1]);
        const std::uint64_t value = descend_threshold(start, m, false, [&](std::uint64_t n) {
            return pi_class((k + 1) * n - 1) - pi_class(k * n);
        });
        // (R+1)/2 for k = 1, ceil(R/3) for k = 2, and the two residue forms.
        std::optional<std::uint64_t> closed;
        if (k == 1)
            closed = (r[m - 1] + 1) / 2;
        else if (k == 2)
            closed = (r[m - 1] + 2) / 3;
        else if (auto c = nk_closed_form(k, m, r[m - 1]))
            closed = c->first;
        if (closed && *closed != value)
            throw std::logic_error("N^(P)_" + std::to_string(k) + "(" + std::to_string(m) +
                                   "): descent " + std::to_string(value) +
                                   " disagrees with closed form " + std::to_string(*closed));
        values.push_back(value);
    }
    return values;
}

inline std::uint64_t nk_number_P(const ResidueClass& P, std::uint64_t k, std::uint64_t m,
                                 const SmallIntervalTheorem& thm, const SieveOptions& options = {})
{
    return nk_sequence_P(P, k, m, thm, options).back();
}

/// N_k(m) over all primes, for any k, by finite descent from
/// n0 = ceil(x0 / k): beyond n0 the chained theorem intervals give m primes
/// in (kn, (k+1)n).
///
/// The descent below n0 walks upward in jumps: from n, the m largest primes
/// below (k+1)n settle every n' up to floor((p_low - 1)/k) at once, or
/// show that n itself is deficient.
inline std::uint64_t nk_small_interval(std::uint64_t k, std::uint64_t m,
                                       const SmallIntervalTheorem& thm)
{
    if (k == 0 || m == 0)
        throw std::invalid_argument("k and m must be positive");
    const Rational v = Rational::successor_ratio(k);
    if (!chain_fits(v, thm, m))
        throw capacity_exceeded_error("m=" + std::to_string(m) + " exceeds capacity " +
                                      std::to_string(capacity(v, thm)) + " for k=" +
                                      std::to_string(k));
    const std::uint64_t n0 = (thm.x0 + k - 1) / k;

    std::uint64_t last_deficient = 1;
    std::uint64_t n = 2;
    while (n < n0) {
        const std::uint64_t lo = k * n;
        std::uint64_t p = (k + 1) * n;
        std::uint64_t found = 0;
        while (found < m) {
            p = prev_prime(p - 1);
            if (p <= lo)
                break;
            ++found;
        }
        if (found < m) {
            last_deficient = n;
            ++n;
        } else {
            n = (p - 1) / k + 1;
        }
    }
    return last_deficient + 1;
}

} // namespace kprime
