#include "kprime/report_io.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace kprime;

namespace {

template <typename T>
T round_trip(const T& value)
{
    return json::parse(json(value).dump()).template get<T>();
}

} // namespace

TEST(Json, SequenceAndCapacityRoundTrip)
{
    const SequenceReport s{"chebyshev", "3/2", {13, 37, 41}};
    EXPECT_EQ(round_trip(s), s);
    const CapacityReport c{"15/14", 10726905420ULL, "28313999", 1953464};
    EXPECT_EQ(round_trip(c), c);
}

TEST(Json, StableKeyOrder)
{
    const SequenceReport s{"ramanujan", "2", {2, 11}};
    EXPECT_EQ(json(s).dump(), R"({"kind":"ramanujan","v":"2","terms":[2,11]})");
    const NkResult r{3, 11, 68, NkMethod::Formula31};
    EXPECT_EQ(json(r).dump(), R"({"k":3,"m":11,"value":68,"method":"formula_31"})");
}

TEST(Json, RandomReportsRoundTrip)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const NkResult nk{rng() % 100 + 1, rng() % 100 + 1, rng(),
                          static_cast<NkMethod>(rng() % 5)};
        EXPECT_EQ(round_trip(nk), nk);

        GapReport g{rng() % 1000 + 1, Unresolved{}, rng() % 100 + 2};
        switch (rng() % 3) {
        case 0:
            g.outcome = GapFound{rng() % 16 + 2};
            break;
        case 1:
            g.outcome = CertifiedZero{rng(), rng()};
            break;
        default:
            break;
        }
        EXPECT_EQ(round_trip(g), g);

        Prop8Report p{rng() % 14 + 1, rng() % 40, rng() % 1000, rng() % 1000, {}};
        for (std::uint64_t j = rng() % 3; j > 0; --j)
            p.violations.push_back({rng() % 100, rng() % 2 ? RamanujanKind::Ramanujan
                                                           : RamanujanKind::Chebyshev,
                                    rng(), rng()});
        EXPECT_EQ(round_trip(p), p);

        const Check c{"check " + std::to_string(i), rng() % 2 == 0, "detail"};
        EXPECT_EQ(round_trip(c), c);
    }
}

TEST(Json, RejectsUnknownNames)
{
    EXPECT_THROW(parse_nk_method("formula_99"), std::invalid_argument);
    EXPECT_THROW((json{{"k", 1}, {"outcome", "maybe"}, {"scan_limit", 2}}.get<GapReport>()),
                 std::invalid_argument);
    EXPECT_THROW(parse_format("xml"), std::invalid_argument);
}

TEST(BFile, ExactBytes)
{
    std::ostringstream out;
    write_bfile(out, {2, 11, 17});
    EXPECT_EQ(out.str(), "1 2\n2 11\n3 17\n");
    std::ostringstream seq;
    write_sequence(seq, OutputFormat::BFile, {"ramanujan", "2", {2, 11}});
    EXPECT_EQ(seq.str(), "1 2\n2 11\n");
}

TEST(Writers, CsvAndGaps)
{
    std::ostringstream csv;
    write_sequence(csv, OutputFormat::Csv, {"ramanujan", "2", {2, 11}});
    EXPECT_EQ(csv.str(), "m,value\n1,2\n2,11\n");

    const std::vector<GapReport> gaps{{1, CertifiedZero{406, 203}, 64},
                                      {4, GapFound{2}, 64},
                                      {26, Unresolved{}, 4}};
    std::ostringstream b;
    write_gaps(b, OutputFormat::BFile, gaps);
    EXPECT_EQ(b.str(), "1 0\n4 2\n26 unresolved\n");
    std::ostringstream c;
    write_gaps(c, OutputFormat::Csv, gaps);
    EXPECT_EQ(c.str(), "k,outcome,a,bound,checked_up_to,scan_limit\n"
                       "1,certified_zero,0,406,203,64\n"
                       "4,gap,2,,,64\n"
                       "26,unresolved,,,,4\n");
    std::ostringstream j;
    write_gaps(j, OutputFormat::Json, gaps);
    EXPECT_EQ(json::parse(j.str()).get<std::vector<GapReport>>(), gaps);
}

TEST(Writers, Checks)
{
    std::ostringstream out;
    write_checks(out, OutputFormat::BFile, "demo", {{"a", true, "ok"}, {"b", false, "bad"}});
    EXPECT_EQ(out.str(), "PASS a: ok\nFAIL b: bad\n");
    std::ostringstream js;
    write_checks(js, OutputFormat::Json, "demo", {{"a", true, "ok"}});
    const auto parsed = json::parse(js.str());
    EXPECT_EQ(parsed.at("suite"), "demo");
    EXPECT_TRUE(parsed.at("passed").get<bool>());
}
