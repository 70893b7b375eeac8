#include "kprime/prime_engine.hpp"
#include "kprime/testkit.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace kprime;

TEST(PrimeTable, SmallTables)
{
    const auto t10 = build_table(10);
    EXPECT_EQ(std::vector<std::uint64_t>(t10.primes().begin(), t10.primes().end()),
              (std::vector<std::uint64_t>{2, 3, 5, 7}));
    const auto t2 = build_table(2);
    ASSERT_EQ(t2.primes().size(), 1u);
    EXPECT_EQ(t2.primes()[0], 2u);
    EXPECT_EQ(t2.pi(1), 0u);
    EXPECT_EQ(t2.pi(2), 1u);
}

TEST(PrimeTable, PiOfMillion)
{
    const auto t = build_table(1000000);
    EXPECT_EQ(pi(t, 1000000), 78498u);
    EXPECT_EQ(pi(t, 0), 0u);
    EXPECT_EQ(pi(t, 1), 0u);
    EXPECT_EQ(pi(t, 2), 1u);
    EXPECT_EQ(pi(t, 100), 25u);
}

TEST(PrimeTable, MatchesTrialDivision)
{
    const std::uint64_t limit = 100000;
    const auto t = build_table(limit);
    const auto flags = testkit::trial_division_flags(limit);
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x <= limit; ++x) {
        count += flags[x];
        ASSERT_EQ(t.pi(x), count) << "x=" << x;
    }
    for (auto p : t.primes())
        ASSERT_TRUE(flags[p]);
}

TEST(PrimeTable, SegmentSizeDoesNotMatter)
{
    SieveOptions small;
    small.segment_size = 64;
    const auto a = build_table(50000, small);
    const auto b = build_table(50000);
    EXPECT_TRUE(std::equal(a.primes().begin(), a.primes().end(), b.primes().begin(), b.primes().end()));
}

TEST(PrimeTable, IntervalCounts)
{
    const auto t = build_table(10000);
    EXPECT_EQ(count_primes_open(t, 10, 20), 4u); // 11 13 17 19
    EXPECT_EQ(t.count_open(7, 11), 0u);
    EXPECT_EQ(t.count_closed(7, 11), 2u);
    EXPECT_EQ(t.count_open(5, 5), 0u);
    EXPECT_EQ(t.count_open(5, 6), 0u);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        std::uint64_t lo = rng() % 10000, hi = rng() % 10000;
        if (lo > hi)
            std::swap(lo, hi);
        const std::uint64_t open = hi > lo ? t.pi(hi - 1) - t.pi(lo) : 0;
        ASSERT_EQ(t.count_open(lo, hi), open);
        ASSERT_EQ(t.count_closed(lo, hi), t.pi(hi) - (lo == 0 ? 0 : t.pi(lo - 1)));
        ASSERT_EQ(t.primes_in(lo, hi).size(), t.pi(hi) - t.pi(lo));
    }
}

TEST(PrimeTable, NthPrime)
{
    const auto t = build_table(1000);
    EXPECT_EQ(t.nth(1), 2u);
    EXPECT_EQ(t.nth(25), 97u);
    EXPECT_EQ(t.nth(168), 997u);
    EXPECT_THROW(t.nth(169), resource_limit_error);
    EXPECT_THROW(t.nth(0), resource_limit_error);
}

TEST(PrimeTable, Errors)
{
    EXPECT_THROW(build_table(1), std::invalid_argument);
    EXPECT_THROW(build_table(0), std::invalid_argument);
    SieveOptions tiny;
    tiny.max_bytes = 1024;
    EXPECT_THROW(build_table(10000000, tiny), resource_limit_error);
    const auto t = build_table(100);
    EXPECT_THROW(t.pi(101), std::out_of_range);
    EXPECT_THROW(t.count_open(5, 200), std::out_of_range);
    EXPECT_THROW(t.count_open(20, 10), std::invalid_argument);
}

TEST(IsPrime, ExhaustiveAgainstTrialDivisionToMillion)
{
    const auto flags = testkit::trial_division_flags(1000000);
    for (std::uint64_t n = 0; n <= 1000000; ++n)
        ASSERT_EQ(is_prime(n), static_cast<bool>(flags[n])) << n;
}

TEST(IsPrime, LargeKnownValues)
{
    EXPECT_TRUE(is_prime(2147483647ULL));
    EXPECT_TRUE(is_prime(1000000007ULL));
    EXPECT_TRUE(is_prime(18446744073709551557ULL)); // largest 64-bit prime
    EXPECT_FALSE(is_prime(18446744073709551615ULL));
    EXPECT_FALSE(is_prime(3215031751ULL));          // strong pseudoprime to 2,3,5,7
    EXPECT_FALSE(is_prime(3825123056546413051ULL)); // strong pseudoprime to bases up to 23
    EXPECT_FALSE(is_prime(4294967297ULL));          // 641 * 6700417
    EXPECT_FALSE(is_prime(1000000007ULL * 998244353ULL));
}

TEST(IsPrime, RandomAgainstTrialDivision)
{
    std::mt19937_64 rng(42);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t n = rng() % 1000000000000ULL;
        ASSERT_EQ(is_prime(n), testkit::trial_division_is_prime(n)) << n;
    }
}

TEST(PrevPrime, Values)
{
    EXPECT_EQ(prev_prime(0), 0u);
    EXPECT_EQ(prev_prime(1), 0u);
    EXPECT_EQ(prev_prime(2), 2u);
    EXPECT_EQ(prev_prime(10), 7u);
    EXPECT_EQ(prev_prime(97), 97u);
    EXPECT_EQ(prev_prime(1000000), 999983u);
}

TEST(Primorial, Segments)
{
    const auto t = build_table(100);
    EXPECT_EQ(primorial_segment(t, 0, 10), 210);
    EXPECT_EQ(primorial_segment(t, 5, 13), 7 * 11 * 13);
    EXPECT_EQ(primorial_segment(t, 7, 7), 1);
    EXPECT_EQ(primorial_segment(t, 24, 28), 1);
    // Splitting an interval multiplies the parts.
    for (std::uint64_t mid = 0; mid <= 100; mid += 7)
        EXPECT_EQ(primorial_segment(t, 0, 100),
                  primorial_segment(t, 0, mid) * primorial_segment(t, mid, 100));
    EXPECT_EQ(big_pow(10, 3), 1000);
    EXPECT_EQ(big_pow(7, 0), 1);
}
