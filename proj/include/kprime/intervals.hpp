#pragma once

#include "kprime/errors.hpp"
#include "kprime/prime_engine.hpp"
#include "kprime/ramanujan.hpp"
#include "kprime/rational.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace kprime {

// ---------------------------------------------------------------------------
// N_k(m): least N such that (kn, (k+1)n) holds >= m primes for all n >= N
// ---------------------------------------------------------------------------

enum class NkMethod { Formula31, Formula32, Formula4, Formula35, Descent };

inline const char* to_string(NkMethod method) noexcept
{
    switch (method) {
    case NkMethod::Formula31: return "formula_31";
    case NkMethod::Formula32: return "formula_32";
    case NkMethod::Formula4: return "formula_4";
    case NkMethod::Formula35: return "formula_35";
    case NkMethod::Descent: return "descent";
    }
    return "unknown";
}

struct NkResult {
    std::uint64_t k;
    std::uint64_t m;
    std::uint64_t value;
    NkMethod method;

    friend bool operator==(const NkResult&, const NkResult&) = default;
};

struct NkOptions {
    /// Count primes in [kn, (k+1)n] instead of (kn, (k+1)n).
    bool closed_endpoints = false;
    /// Caller-proven n beyond which every interval holds >= m primes.
    /// Required for k outside the certified set.
    std::optional<std::uint64_t> n_bound;
    SieveOptions sieve;
};

/// Closed form for N_k(m) given R = R_{(k+1)/k}(m), when one applies.
/// Valid for open intervals and m >= 2.
inline std::optional<std::pair<std::uint64_t, NkMethod>> nk_closed_form(std::uint64_t k,
                                                                       std::uint64_t m,
                                                                       std::uint64_t r)
{
    if (m < 2)
        return std::nullopt;
    if (k == 1)
        return std::pair{(r + 1) / 2, NkMethod::Formula4};
    if (k == 2)
        return std::pair{(r + 2) / 3, NkMethod::Formula35};
    if (r % (k + 1) == 1)
        return std::pair{(r + k) / (k + 1), NkMethod::Formula31};
    if (r % (k + 1) == 2)
        return std::pair{(r + k - 1) / (k + 1), NkMethod::Formula32};
    return std::nullopt;
}

/// ceil(R_{(k+1)/k}(m) / (k+1)) from a known R.
inline std::uint64_t nk_upper_from(std::uint64_t k, std::uint64_t r)
{
    return (r + k) / (k + 1);
}

/// Scans n = start-1 down to 1 and returns 1 + (largest n whose interval
/// holds fewer than m primes). The open interval at n = 1 is empty, so the
/// open result is at least 2; the closed result is at least 1.
template <typename CountFn>
std::uint64_t descend_threshold(std::uint64_t start, std::uint64_t m, bool closed, CountFn&& count)
{
    for (std::uint64_t n = start; n-- > 1;) {
        if (count(n) < m)
            return n + 1;
    }
    return closed ? 1 : 2;
}

/// ceil(R_{(k+1)/k}(m) / (k+1)), m >= 2.
inline std::uint64_t nk_upper(std::uint64_t k, std::uint64_t m, const SieveOptions& options = {})
{
    if (m < 2)
        throw std::invalid_argument("nk_upper needs m >= 2");
    if (k == 0)
        throw std::invalid_argument("k must be positive");
    return nk_upper_from(k, sequence(RamanujanKind::Ramanujan, Rational::successor_ratio(k), m,
                                     options)
                                .back());
}

/// First m_max values of N_k(m), each checked against the closed forms
/// wherever they apply.
inline std::vector<NkResult> nk_sequence(std::uint64_t k, std::uint64_t m_max,
                                         const NkOptions& options = {})
{
    if (k == 0)
        throw std::invalid_argument("k must be positive");
    if (m_max == 0)
        throw std::invalid_argument("m_max must be positive");

    std::vector<NkResult> results;
    results.reserve(m_max);

    if (!is_certified_k(k)) {
        if (!options.n_bound)
            throw not_certified_error("k=" + std::to_string(k) +
                                      " has intervals without primes; supply a bound");
        const std::uint64_t start = *options.n_bound;
        PrimeTable table((k + 1) * std::max<std::uint64_t>(start, 2), options.sieve);
        for (std::uint64_t m = 1; m <= m_max; ++m) {
            auto value = descend_threshold(start, m, options.closed_endpoints, [&](std::uint64_t n) {
                return options.closed_endpoints ? table.count_closed(k * n, (k + 1) * n)
                                                : table.count_open(k * n, (k + 1) * n);
            });
            results.push_back({k, m, value, NkMethod::Descent});
        }
        return results;
    }

    const Rational v = Rational::successor_ratio(k);
    const std::uint64_t terms = std::max<std::uint64_t>(m_max, 2);
    const std::uint64_t bound = upper_bound_x(v, terms);
    PrimeTable table(bound + k + 1, options.sieve);
    const auto r = descent_sequence(table, RamanujanKind::Ramanujan, v, terms, bound);

    for (std::uint64_t m = 1; m <= m_max; ++m) {
        // N_k(1) <= N_k(2), so m = 1 descends from the m = 2 bound.
        const std::uint64_t r_m = r[std::max<std::uint64_t>(m, 2) - 1];
        const std::uint64_t start = nk_upper_from(k, r_m);
        const std::uint64_t value =
            descend_threshold(start, m, options.closed_endpoints, [&](std::uint64_t n) {
                return options.closed_endpoints ? table.count_closed(k * n, (k + 1) * n)
                                                : table.count_open(k * n, (k + 1) * n);
            });

        NkMethod method = NkMethod::Descent;
        if (!options.closed_endpoints) {
            if (auto closed = nk_closed_form(k, m, r[m - 1])) {
                if (closed->first != value)
                    throw std::logic_error("N_" + std::to_string(k) + "(" + std::to_string(m) +
                                           "): descent " + std::to_string(value) +
                                           " disagrees with closed form " +
                                           std::to_string(closed->first));
                method = closed->second;
            } else if (m == 1 && k != 1 && value != 2) {
                throw std::logic_error("N_" + std::to_string(k) + "(1) = " +
                                       std::to_string(value) + ", expected 2");
            }
        }
        results.push_back({k, m, value, method});
    }
    return results;
}

inline NkResult nk_number(std::uint64_t k, std::uint64_t m, const NkOptions& options = {})
{
    if (m == 0)
        throw std::invalid_argument("m must be positive");
    return nk_sequence(k, m, options).back();
}

// ---------------------------------------------------------------------------
// a(k): least n > 1 with (kn, (k+1)n) prime-free
// ---------------------------------------------------------------------------

/// True iff some prime lies strictly between kn and (k+1)n.
inline bool interval_has_prime(std::uint64_t k, std::uint64_t n)
{
    // The interval has n - 1 integers. GCC 11 miscompiles the equivalent
    // test hi <= lo + 1 inside loops over n, so test n directly.
    if (n < 2)
        return false;
    return prev_prime((k + 1) * n - 1) > k * n;
}

/// Least n in [2, n_max] with no prime in (kn, (k+1)n), if any.
inline std::optional<std::uint64_t> gap_least_n(std::uint64_t k, std::uint64_t n_max)
{
    if (k == 0)
        throw std::invalid_argument("k must be positive");
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        if (!interval_has_prime(k, n))
            return n;
    }
    return std::nullopt;
}

struct GapFound {
    std::uint64_t a;
    friend bool operator==(const GapFound&, const GapFound&) = default;
};

/// a(k) = 0, proven: every x >= bound has a prime in (kx/(k+1), x], and
/// every n in [2, checked_up_to] was checked directly.
struct CertifiedZero {
    std::uint64_t bound;
    std::uint64_t checked_up_to;
    friend bool operator==(const CertifiedZero&, const CertifiedZero&) = default;
};

/// No prime-free interval up to the scan limit and no certificate. For
/// k outside the certified set this contradicts the published scan.
struct Unresolved {
    friend bool operator==(const Unresolved&, const Unresolved&) = default;
};

struct GapReport {
    std::uint64_t k;
    std::variant<GapFound, CertifiedZero, Unresolved> outcome;
    std::uint64_t scan_limit;

    /// a(k) with 0 for certified k; nullopt when unresolved.
    std::optional<std::uint64_t> a_value() const
    {
        if (auto* g = std::get_if<GapFound>(&outcome))
            return g->a;
        if (std::holds_alternative<CertifiedZero>(outcome))
            return 0;
        return std::nullopt;
    }

    bool is_anomaly() const { return std::holds_alternative<Unresolved>(outcome); }

    friend bool operator==(const GapReport&, const GapReport&) = default;
};

/// Proves a(k) = 0 for k in {1, 2, 3, 5, 9, 14}.
///
/// B bounds R_{(k+1)/k}(1), so (kx/(k+1), x] holds a prime for x >= B; with
/// x = (k+1)n composite that prime lies inside (kn, (k+1)n). The remaining
/// n < ceil(B / (k+1)) are checked one by one.
inline GapReport certify_no_gap(std::uint64_t k, std::uint64_t scan_limit = 0)
{
    if (!is_certified_k(k))
        throw std::invalid_argument("k=" + std::to_string(k) + " is not in the certified set");
    const std::uint64_t bound = upper_bound_x(Rational::successor_ratio(k), 1);
    const std::uint64_t first_covered = (bound + k) / (k + 1);
    for (std::uint64_t n = 2; n < first_covered; ++n) {
        if (!interval_has_prime(k, n))
            throw certification_failed_error("interval (" + std::to_string(k * n) + ", " +
                                             std::to_string((k + 1) * n) +
                                             ") has no prime");
    }
    return {k, CertifiedZero{bound, first_covered - 1}, scan_limit};
}

inline constexpr std::uint64_t default_gap_scan_limit = 64;

inline GapReport gap_report(std::uint64_t k, std::uint64_t n_max)
{
    if (is_certified_k(k))
        return certify_no_gap(k, n_max);
    if (auto a = gap_least_n(k, n_max))
        return {k, GapFound{*a}, n_max};
    return {k, Unresolved{}, n_max};
}

/// One report per k in [k_min, k_max], in k order, independent of `jobs`.
inline std::vector<GapReport> theorem1_scan(std::uint64_t k_min, std::uint64_t k_max,
                                            std::uint64_t n_max = default_gap_scan_limit,
                                            unsigned jobs = 1)
{
    if (k_min == 0 || k_min > k_max)
        throw std::invalid_argument("need 1 <= k_min <= k_max");
    if (n_max < 2)
        throw std::invalid_argument("n_max must be at least 2");

    const std::uint64_t total = k_max - k_min + 1;
    std::vector<GapReport> reports(total, GapReport{0, Unresolved{}, n_max});
    constexpr std::uint64_t chunk = 4096;
    const std::uint64_t chunks = (total + chunk - 1) / chunk;
    std::atomic<std::uint64_t> next_chunk{0};

    auto worker = [&] {
        for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
            const std::uint64_t begin = c * chunk;
            const std::uint64_t end = std::min(total, begin + chunk);
            for (std::uint64_t i = begin; i < end; ++i)
                reports[i] = gap_report(k_min + i, n_max);
        }
    };

    jobs = std::max(1u, jobs);
    if (jobs == 1 || chunks == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < std::min<std::uint64_t>(jobs, chunks); ++j)
            pool.emplace_back(worker);
    }
    return reports;
}

/// Re-checks a report against a prime table, without the primality test
/// that produced it. The table must reach (k+1) * max(n checked).
inline bool verify_gap_report(const PrimeTable& table, const GapReport& report)
{
    const std::uint64_t k = report.k;
    auto has_prime = [&](std::uint64_t n) { return table.count_open(k * n, (k + 1) * n) > 0; };
    if (auto* g = std::get_if<GapFound>(&report.outcome)) {
        if (g->a < 2 || has_prime(g->a))
            return false;
        for (std::uint64_t n = 2; n < g->a; ++n) {
            if (!has_prime(n))
                return false;
        }
        return true;
    }
    if (auto* z = std::get_if<CertifiedZero>(&report.outcome)) {
        if (!is_certified_k(k) || z->checked_up_to + 1 < (z->bound + k) / (k + 1))
            return false;
        for (std::uint64_t n = 2; n <= z->checked_up_to; ++n) {
            if (!has_prime(n))
                return false;
        }
        return true;
    }
    for (std::uint64_t n = 2; n <= report.scan_limit; ++n) {
        if (!has_prime(n))
            return false;
    }
    return true;
}

} // namespace kprime
