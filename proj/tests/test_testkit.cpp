#include "kprime/testkit.hpp"
#include "kprime/verify.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace kprime;
using namespace kprime::testkit;

TEST(Oracle, RamanujanExamples)
{
    EXPECT_EQ(oracle_R(Rational(2, 1), 2, 200), 11u);
    EXPECT_EQ(oracle_R(Rational(3, 2), 1, 100), 2u);
    EXPECT_EQ(oracle_R(Rational(4, 3), 2, 200), 29u);
    EXPECT_EQ(oracle_R(Rational(2, 1), 1000, 200), std::nullopt);
    EXPECT_THROW(oracle_R(Rational(2, 1), 1, 1), std::invalid_argument);
}

TEST(Oracle, NkExamples)
{
    EXPECT_EQ(oracle_N(3, 3, 100), 11u);
    EXPECT_EQ(oracle_N(1, 1, 50), 2u);
    EXPECT_EQ(oracle_N(5, 2, 100), 7u);
    EXPECT_EQ(oracle_N(1, 100, 20), std::nullopt);
}

TEST(Oracle, ChebyshevExamples)
{
    EXPECT_EQ(oracle_C(Rational(2, 1), 1, 200), 11u);
    EXPECT_EQ(oracle_C(Rational(2, 1), 2, 200), 17u);
}

TEST(Oracle, TrialDivision)
{
    EXPECT_FALSE(trial_division_is_prime(0));
    EXPECT_FALSE(trial_division_is_prime(1));
    EXPECT_TRUE(trial_division_is_prime(2));
    EXPECT_FALSE(trial_division_is_prime(91));
    EXPECT_TRUE(trial_division_is_prime(97));
}

TEST(Fixtures, Parsing)
{
    std::istringstream in("# nk_9 published table, N_9(m)\n2\n14\n\n# note\n23\n");
    const auto fx = parse_fixture(in);
    EXPECT_EQ(fx.id, "nk_9");
    EXPECT_EQ(fx.source, "published table, N_9(m)");
    EXPECT_EQ(fx.terms, (std::vector<std::uint64_t>{2, 14, 23}));
    std::istringstream bad("2\n3\n");
    EXPECT_THROW(parse_fixture(bad), std::runtime_error);
    EXPECT_THROW(load_fixture("/nonexistent/fixture.txt"), std::runtime_error);
}

TEST(Fixtures, AllLoadAndAreSmallToLarge)
{
    const auto all = load_fixtures(KPRIME_FIXTURE_DIR);
    EXPECT_EQ(all.size(), 27u);
    for (const auto& [id, fx] : all) {
        EXPECT_FALSE(fx.terms.empty()) << id;
        EXPECT_FALSE(fx.source.empty()) << id;
    }
    EXPECT_EQ(all.at("ramanujan_2").source.rfind("OEIS A104272", 0), 0u);
}

TEST(Fixtures, SmallValuesAgreeWithOracles)
{
    // Fixtures with values <= 2000: oracle, implementation and printed terms.
    const auto all = load_fixtures(KPRIME_FIXTURE_DIR);
    for (const auto& [name, v] : std::vector<std::pair<std::string, Rational>>{
             {"ramanujan_2", Rational(2, 1)},
             {"ramanujan_3_2", Rational(3, 2)},
             {"ramanujan_4_3", Rational(4, 3)}}) {
        const auto& fx = all.at(name);
        const auto computed = compute_fixture(fx);
        for (std::uint64_t m = 1; m <= fx.terms.size() && fx.terms[m - 1] <= 2000; ++m) {
            EXPECT_EQ(oracle_R(v, m, 2 * fx.terms[m - 1] + 50), fx.terms[m - 1]) << name << " " << m;
            EXPECT_EQ(computed[m - 1], fx.terms[m - 1]);
        }
    }
    for (std::uint64_t k : {1, 2, 3}) {
        const auto& fx = all.at("nk_" + std::to_string(k));
        for (std::uint64_t m = 1; m <= fx.terms.size() && fx.terms[m - 1] <= 200; ++m)
            EXPECT_EQ(oracle_N(k, m, 4 * fx.terms[m - 1] + 100), fx.terms[m - 1]) << k << " " << m;
    }
}

TEST(Verify, FixtureSuiteReportsEveryFixture)
{
    const auto checks = verify_fixtures(KPRIME_FIXTURE_DIR);
    EXPECT_EQ(checks.size(), 27u + 3u);
    std::size_t failed = 0;
    for (const auto& c : checks)
        failed += !c.passed;
    // C_{15/14}(6) and the two printed set-difference lists disagree with
    // exact computation.
    EXPECT_EQ(failed, 3u);
}
