#include "kprime/intervals.hpp"
#include "kprime/testkit.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace kprime;

namespace {

std::vector<std::uint64_t> values(const std::vector<NkResult>& rs)
{
    std::vector<std::uint64_t> out;
    for (const auto& r : rs)
        out.push_back(r.value);
    return out;
}

std::vector<std::uint64_t> fixture(const std::string& name)
{
    return testkit::load_fixture(std::string(KPRIME_FIXTURE_DIR) + "/" + name + ".txt").terms;
}

} // namespace

TEST(Nk, PublishedSequences)
{
    EXPECT_EQ(values(nk_sequence(9, 10)),
              (std::vector<std::uint64_t>{2, 14, 23, 23, 34, 36, 57, 58, 60, 60}));
    EXPECT_EQ(values(nk_sequence(2, 5)), (std::vector<std::uint64_t>{2, 5, 13, 14, 23}));
    for (auto k : certified_ks) {
        const auto expected = fixture("nk_" + std::to_string(k));
        EXPECT_EQ(values(nk_sequence(k, expected.size())), expected) << "k=" << k;
    }
}

TEST(Nk, Examples)
{
    EXPECT_EQ(nk_number(3, 2).value, 8u);
    EXPECT_EQ(nk_number(3, 3).value, 11u);
    EXPECT_LT(nk_number(3, 3).value, 15u);
    EXPECT_EQ(nk_number(1, 1).value, 2u);
}

TEST(Nk, Plateaus)
{
    const auto n3 = values(nk_sequence(3, 12));
    EXPECT_EQ(n3[10], 68u);
    EXPECT_EQ(n3[11], 68u);
    const auto n9 = values(nk_sequence(9, 4));
    EXPECT_EQ(n9[2], 23u);
    EXPECT_EQ(n9[3], 23u);
}

TEST(Nk, ClosedFormsAgreeWithDescent)
{
    // nk_sequence throws if a closed form disagrees; here we also check
    // that each closed form is used somewhere and matches the value.
    std::set<NkMethod> seen;
    for (auto k : certified_ks) {
        const auto rs = nk_sequence(k, 60);
        const auto r = sequence(RamanujanKind::Ramanujan, Rational::successor_ratio(k), 60);
        for (const auto& res : rs) {
            seen.insert(res.method);
            if (res.m < 2)
                continue;
            if (auto c = nk_closed_form(k, res.m, r[res.m - 1])) {
                EXPECT_EQ(c->first, res.value) << "k=" << k << " m=" << res.m;
            }
        }
    }
    EXPECT_TRUE(seen.count(NkMethod::Formula31));
    EXPECT_TRUE(seen.count(NkMethod::Formula32));
    EXPECT_TRUE(seen.count(NkMethod::Descent));
}

TEST(Nk, Minimality)
{
    for (auto k : certified_ks) {
        const auto rs = nk_sequence(k, 8);
        for (const auto& r : rs) {
            auto count = [&](std::uint64_t n) {
                std::uint64_t c = 0;
                for (std::uint64_t p = k * n + 1; p < (k + 1) * n; ++p)
                    c += is_prime(p);
                return c;
            };
            for (std::uint64_t n = r.value; n < r.value + 200; ++n)
                ASSERT_GE(count(n), r.m) << "k=" << k << " m=" << r.m << " n=" << n;
            if (r.value > 2) {
                EXPECT_LT(count(r.value - 1), r.m) << "k=" << k << " m=" << r.m;
            }
        }
    }
}

TEST(Nk, OracleAgreement)
{
    for (std::uint64_t k : {1, 2, 3}) {
        const auto rs = nk_sequence(k, 5);
        for (const auto& r : rs)
            EXPECT_EQ(testkit::oracle_N(k, r.m, 4 * r.value + 100), r.value) << "k=" << k;
    }
}

TEST(Nk, ClosedEndpointsStartWithOne)
{
    NkOptions closed;
    closed.closed_endpoints = true;
    for (std::uint64_t k : {1, 2, 3, 5})
        EXPECT_EQ(nk_sequence(k, 3, closed)[0].value, 1u) << "k=" << k;
    // From m = 3 on the endpoints (k+1)n and kn are composite or excluded
    // past the threshold, so the sequences coincide.
    for (auto k : certified_ks) {
        const auto open = values(nk_sequence(k, 20));
        const auto cl = values(nk_sequence(k, 20, closed));
        for (std::size_t i = 0; i < open.size(); ++i)
            EXPECT_LE(cl[i], open[i]);
    }
}

TEST(Nk, Errors)
{
    EXPECT_THROW(nk_sequence(4, 3), not_certified_error);
    EXPECT_THROW(nk_sequence(0, 3), std::invalid_argument);
    EXPECT_THROW(nk_sequence(1, 0), std::invalid_argument);
    EXPECT_THROW(nk_upper(1, 1), std::invalid_argument);
    NkOptions bounded;
    bounded.n_bound = 1000;
    EXPECT_EQ(nk_sequence(4, 1, bounded)[0].value, testkit::oracle_N(4, 1, 2000));
}

TEST(Gaps, LeastN)
{
    EXPECT_EQ(gap_least_n(4, 16), 2u);
    EXPECT_EQ(gap_least_n(15, 16), 6u);
    EXPECT_EQ(gap_least_n(2, 64), std::nullopt);
    EXPECT_FALSE(interval_has_prime(7, 2));
    EXPECT_TRUE(interval_has_prime(1, 2));
}

TEST(Gaps, ScanMatchesPublishedSequence)
{
    const auto expected = fixture("gap_a");
    const auto reports = theorem1_scan(1, expected.size(), 64);
    ASSERT_EQ(reports.size(), expected.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        EXPECT_EQ(reports[i].k, i + 1);
        EXPECT_EQ(reports[i].a_value(), expected[i]) << "k=" << i + 1;
    }
    const auto seven = theorem1_scan(7, 7, 16);
    EXPECT_EQ(seven[0].a_value(), 2u);
}

TEST(Gaps, Certificates)
{
    for (auto k : certified_ks) {
        const auto r = certify_no_gap(k);
        ASSERT_TRUE(std::holds_alternative<CertifiedZero>(r.outcome));
        const auto& z = std::get<CertifiedZero>(r.outcome);
        EXPECT_GE(z.checked_up_to + 1, (z.bound + k) / (k + 1));
        EXPECT_EQ(r.a_value(), 0u);
    }
    const auto five = std::get<CertifiedZero>(certify_no_gap(5).outcome);
    EXPECT_GE(five.bound, 29u);
    EXPECT_THROW(certify_no_gap(4), std::invalid_argument);
}

TEST(Gaps, UnresolvedIsAnomaly)
{
    const auto r = gap_report(26, 4); // a(26) = 7 > 4
    EXPECT_TRUE(r.is_anomaly());
    EXPECT_EQ(r.a_value(), std::nullopt);
}

TEST(Gaps, DeterministicAcrossJobs)
{
    const auto one = theorem1_scan(15, 20000, 64, 1);
    const auto four = theorem1_scan(15, 20000, 64, 4);
    EXPECT_EQ(one, four);
    for (const auto& r : one) {
        ASSERT_FALSE(r.is_anomaly()) << r.k;
        ASSERT_GE(*r.a_value(), 2u);
        ASSERT_LE(*r.a_value(), 16u);
    }
}

TEST(Gaps, IndependentRecheck)
{
    const auto reports = theorem1_scan(1, 300, 64);
    std::uint64_t limit = 2;
    for (const auto& r : reports) {
        std::uint64_t n = r.scan_limit;
        if (auto* z = std::get_if<CertifiedZero>(&r.outcome))
            n = std::max(n, z->checked_up_to);
        limit = std::max(limit, (r.k + 1) * n);
    }
    const auto table = build_table(limit);
    for (const auto& r : reports)
        EXPECT_TRUE(verify_gap_report(table, r)) << r.k;
    GapReport wrong{4, GapFound{3}, 64};
    EXPECT_FALSE(verify_gap_report(table, wrong));
}

TEST(Gaps, Errors)
{
    EXPECT_THROW(theorem1_scan(5, 4), std::invalid_argument);
    EXPECT_THROW(theorem1_scan(0, 4), std::invalid_argument);
    EXPECT_THROW(theorem1_scan(1, 4, 1), std::invalid_argument);
}
