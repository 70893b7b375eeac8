#pragma once

#include "kprime/errors.hpp"
#include "kprime/prime_engine.hpp"
#include "kprime/rational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kprime {

enum class RamanujanKind { Ramanujan, Chebyshev };

inline const char* to_string(RamanujanKind kind) noexcept
{
    return kind == RamanujanKind::Ramanujan ? "ramanujan" : "chebyshev";
}

// ---------------------------------------------------------------------------
// Explicit theta bounds |theta(x) - x| <= a x / ln^b x, piecewise in x
// ---------------------------------------------------------------------------

/// One row of the piecewise bound: valid for x_lo < x <= x_hi.
struct DusartRegime {
    long double a;
    int b;
    long double x_lo;
    long double x_hi; ///< +infinity for the last row
};

/// Smallest x considered by the bound solver; ln^4(406) > 1300 so every
/// regime's factor (1 - a / ln^b x) is positive from here on.
inline constexpr std::uint64_t min_bound_x = 406;

/// Ordered regime table. Rows must tile (x_lo of the first row, inf) and
/// each must keep 1 - a / ln^b x positive from its first point on. Each
/// row's inequality is taken to hold for every x > x_lo, not only up to
/// x_hi; x_hi only decides which row the solver tries first.
class DusartTable {
public:
    explicit DusartTable(std::vector<DusartRegime> rows) : rows_(std::move(rows))
    {
        if (rows_.empty())
            throw std::invalid_argument("empty regime table");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const auto& r = rows_[i];
            if (!(r.a > 0) || r.b < 1 || !(r.x_hi > r.x_lo))
                throw std::invalid_argument("malformed regime row " + std::to_string(i));
            if (i + 1 < rows_.size() && rows_[i + 1].x_lo != r.x_hi)
                throw std::invalid_argument("regimes do not tile at row " + std::to_string(i));
            if (!(factor(r, static_cast<long double>(first_point(r))) > 0))
                throw std::invalid_argument("regime row " + std::to_string(i) +
                                            " has a non-positive factor at its first point");
        }
        if (!std::isinf(rows_.back().x_hi))
            throw std::invalid_argument("last regime must be unbounded");
    }

    /// The five-row table: (3.965,2) on (25,7e7], (1300,4) on (7e7,1e9],
    /// (0.001,1) on (1e9,8e9], (0.78,3) on (8e9,7e33], (1300,4) beyond.
    static const DusartTable& standard()
    {
        static const DusartTable table({
            {3.965L, 2, 25.0L, 7e7L},
            {1300.0L, 4, 7e7L, 1e9L},
            {0.001L, 1, 1e9L, 8e9L},
            {0.78L, 3, 8e9L, 7e33L},
            {1300.0L, 4, 7e33L, std::numeric_limits<long double>::infinity()},
        });
        return table;
    }

    const std::vector<DusartRegime>& rows() const noexcept { return rows_; }

    /// 1 - a / ln^b x
    static long double factor(const DusartRegime& r, long double x)
    {
        return 1.0L - r.a / std::pow(std::log(x), static_cast<long double>(r.b));
    }

    /// (x / ln x)(1 - a / ln^b x), the one-sided form.
    static long double lower_density(const DusartRegime& r, long double x)
    {
        return x / std::log(x) * factor(r, x);
    }

    /// Lower bound for (theta(x) - theta(x/v)) / ln x, divided by
    /// (1 - 1/v). Applies the row at both x and x/v:
    ///   (x / ln x)(1 - a/(v-1) * (v / ln^b x + 1 / ln^b(x/v))).
    /// The bracket increases with x, so the whole expression increases
    /// wherever it is positive.
    static long double window_density(const DusartRegime& r, const Rational& v, long double x)
    {
        const long double b = static_cast<long double>(r.b);
        const long double lx = std::log(x);
        const long double lxv = lx - std::log(v.value());
        const long double scale = r.a * static_cast<long double>(v.den()) /
                                  static_cast<long double>(v.num() - v.den());
        return x / lx * (1.0L - scale * (v.value() / std::pow(lx, b) + 1.0L / std::pow(lxv, b)));
    }

    static std::uint64_t first_point(const DusartRegime& r)
    {
        auto lo = static_cast<std::uint64_t>(std::floor(r.x_lo)) + 1;
        return std::max(lo, min_bound_x);
    }

    /// First integer x >= 406 with x / v > x_lo, so the row covers x / v too.
    static std::uint64_t first_point(const DusartRegime& r, const Rational& v)
    {
        auto lo = static_cast<std::uint64_t>(std::floor(r.x_lo * v.value())) + 1;
        return std::max(lo, first_point(r));
    }

private:
    std::vector<DusartRegime> rows_;
};

/// Smallest integer B >= 406 inside a regime with
///   (B / ln B)(1 - a/(v-1) (v / ln^b B + 1 / ln^b(B/v))) >= v m / (v - 1),
/// taking the first regime that admits one. The left side bounds
/// (theta(x) - theta(x/v)) / ((1 - 1/v) ln x) from below and increases
/// in x, so theta(x) - theta(x/v) >= m ln x for every x >= B, and
/// R_v(m) <= C_v(m) <= B.
///
/// B also satisfies the one-sided (B / ln B)(1 - a / ln^b B) >= v m / (v-1).
inline std::uint64_t upper_bound_x(const Rational& v, std::uint64_t m,
                                   const DusartTable& table = DusartTable::standard())
{
    if (m == 0)
        throw std::invalid_argument("m must be positive");
    const long double target = static_cast<long double>(m) * v.excess_factor();
    auto holds = [&](const DusartRegime& r, std::uint64_t x) {
        return DusartTable::window_density(r, v, static_cast<long double>(x)) >= target;
    };
    for (const auto& r : table.rows()) {
        std::uint64_t lo = DusartTable::first_point(r, v);
        if (static_cast<long double>(lo) > r.x_hi)
            continue;
        std::uint64_t hi;
        if (std::isinf(r.x_hi)) {
            hi = lo;
            while (!holds(r, hi)) {
                if (hi > std::numeric_limits<std::uint64_t>::max() / 2)
                    throw resource_limit_error("bound exceeds 64-bit range");
                hi *= 2;
            }
        } else {
            hi = static_cast<std::uint64_t>(std::floor(r.x_hi));
            if (!holds(r, hi))
                continue;
        }
        while (lo < hi) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            if (holds(r, mid))
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }
    throw std::logic_error("no regime admits a bound");
}

// ---------------------------------------------------------------------------
// Descent
// ---------------------------------------------------------------------------

/// pi(x) - pi(floor(x / v)): primes in (x / v, x].
inline std::uint64_t ratio_window_count(const PrimeTable& table, const Rational& v, std::uint64_t x)
{
    return table.pi(x) - table.pi(v.floor_div(x));
}

/// Largest j with prod_{x/v < p <= x} p >= x^j, for x >= 2. Values of j at
/// or above `cap` are reported as `cap`.
///
/// Uses sum(ln p) / ln x with an exact big-integer comparison whenever the
/// log sum lies within 1e-6 of an integer multiple of ln x.
inline std::uint64_t chebyshev_window_order(const PrimeTable& table, const Rational& v,
                                            std::uint64_t x, long double log_sum,
                                            std::uint64_t cap)
{
    const long double log_x = std::log(static_cast<long double>(x));
    const long double ratio = log_sum / log_x;
    const long double nearest = std::round(ratio);
    if (std::fabs(log_sum - nearest * log_x) >= 1e-6L) {
        auto j = static_cast<std::uint64_t>(std::floor(ratio));
        return std::min(j, cap);
    }
    auto j = static_cast<std::uint64_t>(nearest);
    if (j >= cap + 1)
        return cap;
    mpz_class product = primorial_segment(table, v.floor_div(x), x);
    if (product >= big_pow(x, static_cast<unsigned long>(j)))
        return std::min(j, cap);
    return j - 1;
}

/// First m_max terms of R_v or C_v by a single forward sweep over
/// x = 1 .. bound-1, where `bound` is a proven upper bound for the
/// m_max-th term. The table must reach bound - 1.
inline std::vector<std::uint64_t> descent_sequence(const PrimeTable& table, RamanujanKind kind,
                                                   const Rational& v, std::uint64_t m_max,
                                                   std::uint64_t bound)
{
    if (m_max == 0)
        throw std::invalid_argument("m_max must be positive");
    if (bound < 2)
        throw std::invalid_argument("bound must be at least 2");
    if (bound - 1 > table.limit())
        throw resource_limit_error("descent needs primes up to " + std::to_string(bound - 1) +
                                   ", table stops at " + std::to_string(table.limit()));

    // latest[j]: last x below the bound whose window holds exactly j
    // (Ramanujan) or has order exactly j (Chebyshev).
    std::vector<std::uint64_t> latest(m_max, 0);

    if (kind == RamanujanKind::Ramanujan) {
        // Two pointers into the prime list track pi(x) and pi(x / v).
        auto primes = table.primes();
        std::size_t upper = 0;
        std::size_t lower = 0;
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
    } else {
        // Compensated prefix sums of ln p keep the window sum accurate to
        // about eps * theta(bound), far below the 1e-6 exact-check margin.
        auto primes = table.primes();
        std::vector<long double> theta{0.0L};
        long double sum = 0, carry = 0;
        for (std::uint64_t p : primes) {
            if (p >= bound)
                break;
            long double term = std::log(static_cast<long double>(p)) - carry;
            long double next = sum + term;
            carry = (next - sum) - term;
            sum = next;
            theta.push_back(sum);
        }
        std::size_t upper = 0;
        std::size_t lower = 0;
        for (std::uint64_t x = 2; x < bound; ++x) {
            while (upper + 1 < theta.size() && primes[upper] <= x)
                ++upper;
            const std::uint64_t y = v.floor_div(x);
            while (lower < upper && primes[lower] <= y)
                ++lower;
            const long double log_sum = theta[upper] - theta[lower];
            const std::uint64_t order = chebyshev_window_order(table, v, x, log_sum, m_max);
            if (order < m_max)
                latest[order] = x;
        }
    }

    std::vector<std::uint64_t> terms(m_max);
    std::uint64_t last_deficient = 0;
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        last_deficient = std::max(last_deficient, latest[m - 1]);
        std::uint64_t term = std::max<std::uint64_t>(last_deficient + 1, 2);
        if (!is_prime(term))
            throw std::logic_error(std::string(to_string(kind)) + " number " +
                                   std::to_string(term) + " for v=" + v.to_string() +
                                   " is not prime");
        terms[m - 1] = term;
    }
    return terms;
}

/// First m_max terms using a caller-supplied table (must reach the bound).
inline std::vector<std::uint64_t> sequence(const PrimeTable& table, RamanujanKind kind,
                                           const Rational& v, std::uint64_t m_max)
{
    return descent_sequence(table, kind, v, m_max, upper_bound_x(v, m_max));
}

/// First m_max terms; sizes its own table from the bound.
inline std::vector<std::uint64_t> sequence(RamanujanKind kind, const Rational& v,
                                           std::uint64_t m_max, const SieveOptions& options = {})
{
    const std::uint64_t bound = upper_bound_x(v, m_max);
    PrimeTable table(bound, options);
    return descent_sequence(table, kind, v, m_max, bound);
}

inline std::uint64_t ramanujan_number(const PrimeTable& table, const Rational& v, std::uint64_t m)
{
    return sequence(table, RamanujanKind::Ramanujan, v, m).back();
}

inline std::uint64_t ramanujan_number(const Rational& v, std::uint64_t m)
{
    return sequence(RamanujanKind::Ramanujan, v, m).back();
}

inline std::uint64_t chebyshev_number(const PrimeTable& table, const Rational& v, std::uint64_t m)
{
    return sequence(table, RamanujanKind::Chebyshev, v, m).back();
}

inline std::uint64_t chebyshev_number(const Rational& v, std::uint64_t m)
{
    return sequence(RamanujanKind::Chebyshev, v, m).back();
}

/// theta(x) - theta(floor(x / v)) >= m ln x, decided exactly as a
/// primorial-versus-power comparison.
inline bool chebyshev_predicate(const PrimeTable& table, const Rational& v, std::uint64_t x,
                                std::uint64_t m)
{
    return primorial_segment(table, v.floor_div(x), x) >= big_pow(x, static_cast<unsigned long>(m));
}

/// pi(x) - pi(x/2) > (x/6 - 3 sqrt(x)) / ln x
inline bool ramanujan_inequality_holds(const PrimeTable& table, std::uint64_t x)
{
    const long double lx = static_cast<long double>(x);
    const long double rhs = (lx / 6.0L - 3.0L * std::sqrt(lx)) / std::log(lx);
    return static_cast<long double>(table.pi(x) - table.pi(x / 2)) > rhs;
}

// ---------------------------------------------------------------------------
// Bounds of the form R_{(k+1)/k}(m) <= p_{tm}
// ---------------------------------------------------------------------------

inline constexpr std::array<std::uint64_t, 6> certified_ks{1, 2, 3, 5, 9, 14};

inline bool is_certified_k(std::uint64_t k) noexcept
{
    return std::find(certified_ks.begin(), certified_ks.end(), k) != certified_ks.end();
}

/// Multiplier t with R_{(k+1)/k}(m) <= p_{tm}.
inline std::uint64_t prop8_t(std::uint64_t k)
{
    switch (k) {
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    case 5: return 11;
    case 9: return 31;
    case 14: return 32;
    default:
        throw std::invalid_argument("no p_{tm} bound known for k=" + std::to_string(k));
    }
}

/// Left side of the sufficient condition
///   (ln tm + ln ln tm + 1) / (ln tm (1 - 3.965 / ln^2(tm ln tm))) <= t / (k+1).
inline long double prop8_lhs(std::uint64_t t, std::uint64_t m)
{
    const long double tm = static_cast<long double>(t * m);
    const long double l = std::log(tm);
    const long double inner = std::log(tm * l);
    return (l + std::log(l) + 1.0L) / (l * (1.0L - 3.965L / (inner * inner)));
}

/// Least m0 such that the sufficient condition holds for every m in
/// [m0, search_limit]. The left side decreases for large m, so with a
/// generous search limit this is the analytic threshold.
inline std::uint64_t prop8_analytic_m0(std::uint64_t k, std::uint64_t search_limit = 1u << 22)
{
    const std::uint64_t t = prop8_t(k);
    const long double rhs = static_cast<long double>(t) / static_cast<long double>(k + 1);
    std::uint64_t last_failure = 0;
    for (std::uint64_t m = 1; m <= search_limit; ++m) {
        if (t * m < 3)
            continue; // ln ln tm undefined
        const long double lhs = prop8_lhs(t, m);
        if (!(lhs > 0 && lhs <= rhs))
            last_failure = m;
    }
    return last_failure + 1;
}

struct Prop8Violation {
    std::uint64_t m;
    RamanujanKind kind; ///< Ramanujan: R(m) > p_tm; Chebyshev: C(m-1) > p_tm
    std::uint64_t value;
    std::uint64_t bound;
};

struct Prop8Report {
    std::uint64_t k;
    std::uint64_t t;
    std::uint64_t m_max;
    std::uint64_t analytic_m0;
    std::vector<Prop8Violation> violations;

    bool all_hold() const noexcept { return violations.empty(); }
};

/// Upper bound for the n-th prime, n >= 1.
inline std::uint64_t nth_prime_upper(std::uint64_t n)
{
    if (n < 6)
        return 13;
    const double ln = std::log(static_cast<double>(n));
    return static_cast<std::uint64_t>(static_cast<double>(n) * (ln + std::log(ln))) + 1;
}

/// Checks R_{(k+1)/k}(m) <= p_{tm} for 1 <= m <= m_max and
/// C_{(k+1)/k}(m-1) <= p_{tm} for 2 <= m <= m_max.
inline Prop8Report verify_prop8(std::uint64_t k, std::uint64_t m_max,
                                const SieveOptions& options = {})
{
    if (m_max < 2)
        throw std::invalid_argument("m_max must be at least 2");
    const std::uint64_t t = prop8_t(k);
    const Rational v = Rational::successor_ratio(k);
    const std::uint64_t bound = upper_bound_x(v, m_max);
    PrimeTable table(std::max(bound, nth_prime_upper(t * m_max)), options);

    const auto r = descent_sequence(table, RamanujanKind::Ramanujan, v, m_max, bound);
    const auto c = descent_sequence(table, RamanujanKind::Chebyshev, v, m_max - 1, bound);

    Prop8Report report{k, t, m_max, prop8_analytic_m0(k), {}};
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        const std::uint64_t p = table.nth(t * m);
        if (r[m - 1] > p)
            report.violations.push_back({m, RamanujanKind::Ramanujan, r[m - 1], p});
        if (m >= 2 && c[m - 2] > p)
            report.violations.push_back({m, RamanujanKind::Chebyshev, c[m - 2], p});
    }
    return report;
}

} // namespace kprime
