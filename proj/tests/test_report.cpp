#include "adft/report.hpp"

#include <gtest/gtest.h>

using namespace adft;

namespace {

malignant_report sample_report() {
    malignant_report r;
    r.gadget = "memory";
    r.blocks = 3;
    r.matrix = {{0, 0, 0}, {1234.5, 5565, 0}, {68, 212, 6}};
    r.ec_parts.assign(8, std::vector<double>(8, 0.0));
    r.ec_parts[4][4] = 1771.25;
    r.z2_raw_by_block = {0, 116, 0};
    r.pairs = 7085.5;
    r.z2 = 29;
    r.C = 7114.5;
    r.L = 471;
    r.B = compute_B(471);
    r.deviations = schedule_deviations(extended_kind::memory, {});
    return r;
}

} // namespace

TEST(report, json_fields) {
    const auto j = to_json(sample_report(), reference_L_memory);
    EXPECT_EQ(j["format"], report_format);
    EXPECT_EQ(j["version"], code_version);
    EXPECT_EQ(j["gadget"], "memory");
    EXPECT_EQ(j["matrix"].size(), 3u);
    EXPECT_EQ(j["matrix"][2].size(), 3u);
    EXPECT_EQ(j["matrix"][1][0].get<double>(), 1234.5);
    EXPECT_EQ(j["ec_parts"].size(), 8u);
    EXPECT_EQ(j["ec_parts"][4][4].get<double>(), 1771.25);
    EXPECT_EQ(j["C"].get<double>(), 7114.5);
    EXPECT_EQ(j["L"].get<long>(), 471);
    EXPECT_EQ(j["B_at_reference_L"].get<long long>(), 8171621);
    EXPECT_FALSE(j["deviations"].empty());
}

TEST(report, text_round_trips) {
    const auto r = sample_report();
    const auto j = nlohmann::json::parse(report_text(r, extended_kind::memory));
    EXPECT_EQ(j["pairs"].get<double>(), r.pairs);
    EXPECT_EQ(j["reference_L"].get<long>(), 366);
}

TEST(report, cz_deviations_name_the_cross_link) {
    const auto d = schedule_deviations(extended_kind::cz, {});
    const auto m = schedule_deviations(extended_kind::memory, {});
    EXPECT_GT(d.size(), m.size());
    bool cross = false;
    for (auto& s : d) cross |= s.rfind("cross-link", 0) == 0;
    EXPECT_TRUE(cross);
}
