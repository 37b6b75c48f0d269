#include <sstream>

#include <gtest/gtest.h>

#include "binzeta/commands.hpp"

using namespace binzeta;

namespace {

Json without_times(const RunReport& r) {
    Json j = to_json(r);
    j.erase("wall_time_ms");
    return j;
}

}  // namespace

TEST(Report, VerdictsAndOk) {
    RunReport r{"x", {}, {}, 0};
    r.check("a", 1, 1);
    r.record("b", "note");
    EXPECT_TRUE(r.ok());
    r.check("c", 1, 2);
    EXPECT_FALSE(r.ok());
    EXPECT_EQ(r.results[1].verdict, Verdict::recorded);
    EXPECT_EQ(r.results[2].verdict, Verdict::fail);
}

TEST(Report, JsonSchema) {
    RunReport r{"expsum", {{"m", 5}}, {}, 1.5};
    r.check("K_5", 11, 11);
    const Json j = to_json(r);
    EXPECT_EQ(j["command"], "expsum");
    EXPECT_EQ(j["params"]["m"], 5);
    ASSERT_EQ(j["results"].size(), 1u);
    EXPECT_EQ(j["results"][0]["verdict"], "pass");
    EXPECT_EQ(j["results"][0]["expected"], 11);
    EXPECT_TRUE(j.contains("wall_time_ms"));
}

TEST(Report, BigIntegersBecomeStrings) {
    EXPECT_TRUE(json_int(BigInt(42)).is_number_integer());
    const BigInt huge = BigInt(1) << 80;
    EXPECT_EQ(json_int(huge), huge.str());
}

TEST(Report, CsvEscapes) {
    RunReport r{"c", {}, {}, 0};
    r.record("a,b", "say \"hi\"");
    std::ostringstream out;
    write_csv(out, r);
    EXPECT_EQ(out.str(), "command,name,expected,observed,verdict\nc,\"a,b\",,\"say \"\"hi\"\"\",recorded\n");
}

TEST(Report, TableMentionsFailures) {
    RunReport r{"c", {}, {}, 0};
    r.check("n", 1, 2);
    std::ostringstream out;
    write_table(out, r);
    EXPECT_NE(out.str().find("FAILURES"), std::string::npos);
}

TEST(Commands, IntList) {
    EXPECT_EQ(parse_int_list("4..6"), (std::vector<int>{4, 5, 6}));
    EXPECT_EQ(parse_int_list("1-3,7"), (std::vector<int>{1, 2, 3, 7}));
    EXPECT_EQ(parse_int_list("5"), (std::vector<int>{5}));
    EXPECT_THROW(parse_int_list("a"), ParseError);
    EXPECT_THROW(parse_int_list(""), ParseError);
}

TEST(Commands, Deterministic) {
    FieldSource fields;
    EXPECT_EQ(without_times(cmd_corrdist(fields, 9, 1, std::nullopt)), without_times(cmd_corrdist(fields, 9, 1, std::nullopt)));
    EXPECT_EQ(without_times(cmd_expsum(fields, 9, 3, "Kp")), without_times(cmd_expsum(fields, 9, 3, "Kp")));
}

TEST(Commands, ExpsumExpectations) {
    FieldSource fields;
    for (const char* sum : {"K", "C", "G", "Kp"})
        for (int m : {5, 6, 9}) {
            const auto r = cmd_expsum(fields, m, 3, sum);
            EXPECT_TRUE(r.ok()) << sum << " m=" << m;
        }
    EXPECT_EQ(cmd_expsum(fields, 7, 1, "K").results[0].observed, -13);
    EXPECT_THROW(cmd_expsum(fields, 7, 1, "Q"), PreconditionError);
}

TEST(Commands, ConjecturesRecordUnprovedCases) {
    FieldSource fields;
    const auto r = cmd_conjectures(fields, {3, 4, 5, 6}, {3});
    EXPECT_TRUE(r.ok());
    int recorded = 0;
    for (const auto& item : r.results) recorded += item.verdict == Verdict::recorded;
    EXPECT_EQ(recorded, 4);  // m = 3 and 6, both checks
}

TEST(Commands, CorrdistM11) {
    FieldSource fields;
    const auto r = cmd_corrdist(fields, 11, 1, std::nullopt);
    EXPECT_TRUE(r.ok());
    bool found = false;
    for (const auto& item : r.results)
        if (item.name == "five-valued multiplicities") {
            found = true;
            EXPECT_EQ(item.observed["N0"], 1155);
        }
    EXPECT_TRUE(found);
    const auto k3 = cmd_corrdist(fields, 7, 3, std::nullopt);
    const auto k1 = cmd_corrdist(fields, 7, 1, std::nullopt);
    EXPECT_EQ(to_json(k3)["results"][0], to_json(k1)["results"][0]);
    EXPECT_THROW(cmd_corrdist(fields, 7, std::nullopt, std::nullopt), PreconditionError);
}

TEST(Commands, A1WeightsCurvesZeta) {
    FieldSource fields;
    EXPECT_TRUE(cmd_a1(fields, 7, 3).ok());
    EXPECT_TRUE(cmd_weights(fields, 7, 1, WeightMode::direct).ok());
    EXPECT_TRUE(cmd_weights(fields, 11, 1, WeightMode::via_correlation).ok());
    EXPECT_TRUE(cmd_curvecount(fields, "p3", {1, 2, 3, 4}).ok());
    EXPECT_TRUE(cmd_curvecount(fields, "p1tilde", {1, 2, 3, 4, 5, 6}).ok());
    const auto& l3 = catalog_lpoly("L3");
    EXPECT_TRUE(cmd_zeta("L3", l3.factors, 6, l3.genus).ok());
    const auto rec = cmd_reconstruct({4, 4}, 2, 2);
    EXPECT_TRUE(rec.ok());
    EXPECT_EQ(rec.results[0].observed, catalog_lpoly("L4").expanded().to_string());
    EXPECT_TRUE(cmd_dm_check(200).ok());
}

TEST(Commands, PolyTableOverride) {
    // x^7 + x^3 + 1 is primitive: sums are basis independent.
    FieldSource custom(std::map<int, std::uint32_t>{{7, 0x89}});
    FieldSource standard;
    EXPECT_EQ(custom.get(7).reduction(), 0x89u);
    EXPECT_EQ(without_times(cmd_expsum(custom, 7, 3, "G")), without_times(cmd_expsum(standard, 7, 3, "G")));
    FieldSource broken(std::map<int, std::uint32_t>{{7, 0x81}});
    EXPECT_THROW(broken.get(7), PreconditionError);
}
