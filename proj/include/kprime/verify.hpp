#pragma once

#include "kprime/intervals.hpp"
#include "kprime/ramanujan.hpp"
#include "kprime/report_io.hpp"
#include "kprime/residue.hpp"
#include "kprime/testkit.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace kprime {

namespace detail {

inline std::uint64_t parse_u64(std::string_view s)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("bad number '" + std::string(s) + "' in fixture id");
    return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

inline std::string describe_mismatch(const std::vector<std::uint64_t>& expected,
                                     const std::vector<std::uint64_t>& got)
{
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i >= got.size() || expected[i] != got[i]) {
            std::ostringstream os;
            os << "term " << (i + 1) << ": expected " << expected[i] << ", got "
               << (i < got.size() ? std::to_string(got[i]) : std::string("nothing"));
            return os.str();
        }
    }
    return {};
}

} // namespace detail

/// Recomputes the terms a fixture lists, dispatching on its id:
///   ramanujan_P[_Q], chebyshev_P[_Q]  -> R_v, C_v with v = P/Q
///   nk_K                              -> N_K(m)
///   residue_R_mod_Q                   -> (2, P)-Ramanujan numbers, Cullinan-Hajir parameters
///   nk1_R_mod_Q                       -> N^(P)_1(m), same parameters
///   gap_a                             -> a(1), a(2), ...
inline std::vector<std::uint64_t> compute_fixture(const testkit::Fixture& fx)
{
    const auto parts = detail::split(fx.id, '_');
    const std::uint64_t count = fx.terms.size();
    auto ratio = [&](std::size_t at) {
        std::uint64_t p = detail::parse_u64(parts.at(at));
        std::uint64_t q = parts.size() > at + 1 ? detail::parse_u64(parts.at(at + 1)) : 1;
        return Rational(p, q);
    };
    if (parts[0] == "ramanujan")
        return sequence(RamanujanKind::Ramanujan, ratio(1), count);
    if (parts[0] == "chebyshev")
        return sequence(RamanujanKind::Chebyshev, ratio(1), count);
    if (parts[0] == "nk" && parts.size() == 2) {
        std::vector<std::uint64_t> out;
        for (const auto& r : nk_sequence(detail::parse_u64(parts[1]), count))
            out.push_back(r.value);
        return out;
    }
    if ((parts[0] == "residue" || parts[0] == "nk1") && parts.size() == 4 && parts[2] == "mod") {
        const ResidueClass P(detail::parse_u64(parts[3]), detail::parse_u64(parts[1]));
        const auto thm = SmallIntervalTheorem::cullinan_hajir();
        if (parts[0] == "residue")
            return residue_sequence(P, Rational(2, 1), count, thm);
        return nk_sequence_P(P, 1, count, thm);
    }
    if (fx.id == "gap_a") {
        std::vector<std::uint64_t> out;
        for (const auto& r : theorem1_scan(1, count, default_gap_scan_limit))
            out.push_back(r.a_value().value_or(~std::uint64_t{0}));
        return out;
    }
    throw std::invalid_argument("no recipe for fixture '" + fx.id + "'");
}

inline Check check_fixture(const testkit::Fixture& fx)
{
    const auto got = compute_fixture(fx);
    const auto mismatch = detail::describe_mismatch(fx.terms, got);
    return {"fixture " + fx.id, mismatch.empty(),
            mismatch.empty() ? std::to_string(fx.terms.size()) + " terms match (" + fx.source + ")"
                             : mismatch + " (" + fx.source + ")"};
}

/// Every fixture in `dir`, plus the C_2 / R_2 comparison up to C_2(100).
inline std::vector<Check> verify_fixtures(const std::filesystem::path& dir)
{
    std::vector<Check> checks;
    for (const auto& [id, fx] : testkit::load_fixtures(dir))
        checks.push_back(check_fixture(fx));

    const auto c2 = sequence(RamanujanKind::Chebyshev, Rational(2, 1), 100);
    checks.push_back({"C_2(17), C_2(36), C_2(100)", c2[16] == 223 && c2[35] == 443 && c2[99] == 1489,
                      std::to_string(c2[16]) + ", " + std::to_string(c2[35]) + ", " +
                          std::to_string(c2[99])});

    const auto r2 = sequence(RamanujanKind::Ramanujan, Rational(2, 1), 300);
    std::set<std::uint64_t> rset(r2.begin(), r2.end());
    std::set<std::uint64_t> cset(c2.begin(), c2.end());
    std::vector<std::uint64_t> not_ramanujan, missing;
    for (auto c : c2)
        if (!rset.count(c))
            not_ramanujan.push_back(c);
    for (auto r : r2)
        if (r <= c2.back() && !cset.count(r))
            missing.push_back(r);
    auto join = [](const std::vector<std::uint64_t>& xs) {
        std::string s;
        for (auto x : xs)
            s += (s.empty() ? "" : " ") + std::to_string(x);
        return s;
    };
    checks.push_back({"C_2 values that are not Ramanujan primes",
                      not_ramanujan == std::vector<std::uint64_t>{223, 443}, join(not_ramanujan)});
    checks.push_back({"Ramanujan primes <= 1489 missing from C_2",
                      missing == std::vector<std::uint64_t>{181, 227, 439, 491, 1283, 1301},
                      join(missing)});
    return checks;
}

inline std::vector<Check> verify_prop8_suite(std::uint64_t m_max = 100)
{
    std::vector<Check> checks;
    for (auto k : certified_ks) {
        const auto report = verify_prop8(k, m_max);
        std::string detail = "m <= " + std::to_string(m_max) + ", " +
                             std::to_string(report.violations.size()) +
                             " violations, analytic m0 = " + std::to_string(report.analytic_m0);
        checks.push_back({"p_{tm} bound k=" + std::to_string(k) + " t=" + std::to_string(report.t),
                          report.all_hold(), detail});
    }
    return checks;
}

/// a(k) for small k against the fixture, the range scan, and the six
/// certificates.
inline std::vector<Check> verify_theorem1(const std::filesystem::path& fixture_dir,
                                          std::uint64_t k_max = 100000, unsigned jobs = 1)
{
    std::vector<Check> checks;
    const auto fx = testkit::load_fixture(fixture_dir / "gap_a.txt");
    checks.push_back(check_fixture(fx));

    const auto reports = theorem1_scan(15, k_max, default_gap_scan_limit, jobs);
    std::uint64_t anomalies = 0, out_of_range = 0, lo = ~std::uint64_t{0}, hi = 0;
    for (const auto& r : reports) {
        if (r.is_anomaly()) {
            ++anomalies;
            continue;
        }
        if (!std::holds_alternative<GapFound>(r.outcome))
            continue;
        const auto a = *r.a_value();
        lo = std::min(lo, a);
        hi = std::max(hi, a);
        if (a < 2 || a > 16)
            ++out_of_range;
    }
    checks.push_back({"a(k) in [2,16] for 15 <= k <= " + std::to_string(k_max),
                      anomalies == 0 && out_of_range == 0,
                      "observed [" + std::to_string(lo) + "," + std::to_string(hi) + "], " +
                          std::to_string(anomalies) + " anomalies"});

    for (auto k : certified_ks) {
        try {
            const auto r = certify_no_gap(k);
            const auto& z = std::get<CertifiedZero>(r.outcome);
            checks.push_back({"a(" + std::to_string(k) + ") = 0", true,
                              "bound " + std::to_string(z.bound) + ", checked n <= " +
                                  std::to_string(z.checked_up_to)});
        } catch (const certification_failed_error& e) {
            checks.push_back({"a(" + std::to_string(k) + ") = 0", false, e.what()});
        }
    }
    return checks;
}

} // namespace kprime
