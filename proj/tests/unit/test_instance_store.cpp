#include "hyscdg/instance_store.hpp"
#include "hyscdg/rng.hpp"

#include <algorithm>

#include <gtest/gtest.h>

using namespace hyscdg;

namespace {

nlohmann::json square_feature(const std::string& id, double x, double y, double s, int cls = 0) {
    return {{"type", "Feature"},
            {"id", id},
            {"properties", {{"class", cls}}},
            {"geometry",
             {{"type", "Polygon"},
              {"coordinates", {{{x, y}, {x + s, y}, {x + s, y + s}, {x, y + s}, {x, y}}}}}}};
}

} // namespace

TEST(Footprints, ParsesPolygonsAndMultiPolygonParts) {
    nlohmann::json multi = {{"type", "Feature"},
                            {"properties", {{"id", "m"}}},
                            {"geometry",
                             {{"type", "MultiPolygon"},
                              {"coordinates",
                               {{{{0, 0}, {1, 0}, {1, 1}, {0, 0}}}, {{{5, 5}, {6, 5}, {6, 6}, {5, 5}}}}}}}};
    const nlohmann::json fc = {{"type", "FeatureCollection"},
                               {"features", {square_feature("a", 0, 0, 2, 4), multi}}};
    const auto report = parse_footprints(fc);
    ASSERT_EQ(report.footprints.size(), 3u);
    EXPECT_EQ(report.footprints[0].id, "a");
    ASSERT_TRUE(report.footprints[0].class_hint.has_value());
    EXPECT_EQ(*report.footprints[0].class_hint, 4);
    EXPECT_EQ(report.footprints[1].id, "m#0");
    EXPECT_EQ(report.footprints[2].id, "m#1");
    EXPECT_TRUE(report.feature_errors.empty());
}

TEST(Footprints, DropsDegenerateAndReportsBrokenFeatures) {
    nlohmann::json flat = square_feature("flat", 0, 0, 0);
    nlohmann::json broken = {{"type", "Feature"}, {"id", "b"}, {"geometry", {{"type", "Polygon"}}}};
    nlohmann::json bowtie = {{"type", "Feature"},
                             {"id", "bow"},
                             {"geometry",
                              {{"type", "Polygon"}, {"coordinates", {{{0, 0}, {3, 3}, {3, 0}, {0, 1}, {0, 0}}}}}}};
    const auto report = parse_footprints(
        {{"type", "FeatureCollection"}, {"features", {flat, broken, bowtie, square_feature("ok", 0, 0, 1)}}});
    ASSERT_EQ(report.footprints.size(), 1u);
    EXPECT_EQ(report.footprints[0].id, "ok");
    EXPECT_EQ(report.degenerate_dropped, 1u);
    EXPECT_EQ(report.feature_errors.size(), 2u);
}

TEST(Footprints, MinimumAreaFilter) {
    const nlohmann::json fc = {{"type", "FeatureCollection"},
                               {"features", {square_feature("small", 0, 0, 1), square_feature("big", 0, 0, 3)}}};
    const auto report = parse_footprints(fc, 2.0);
    ASSERT_EQ(report.footprints.size(), 1u);
    EXPECT_EQ(report.footprints[0].id, "big");
}

TEST(Footprints, TopLevelMustBeACollection) {
    EXPECT_THROW((void)parse_footprints(nlohmann::json::array()), FormatError);
}

TEST(InstanceStore, QueryMatchesBruteForce) {
    CounterRng rng(31);
    nlohmann::json features = nlohmann::json::array();
    for (int i = 0; i < 300; ++i) {
        features.push_back(square_feature("f" + std::to_string(i), rng.uniform01() * 1000, rng.uniform01() * 1000,
                                          1 + rng.uniform01() * 30));
    }
    auto fps = parse_footprints({{"type", "FeatureCollection"}, {"features", features}}).footprints;
    const InstanceStore store(fps);
    for (int q = 0; q < 100; ++q) {
        const double x = rng.uniform01() * 1000, y = rng.uniform01() * 1000, s = rng.uniform01() * 150;
        const Rect r{x, y, x + s, y + s};
        std::vector<std::string> want;
        for (const auto& f : fps) {
            if (polygon_intersects_rect(f.polygon, r)) want.push_back(f.id);
        }
        std::sort(want.begin(), want.end());
        std::vector<std::string> got;
        for (const auto& f : store.query(r)) got.push_back(f.id);
        EXPECT_EQ(got, want);
    }
}

TEST(InstanceStore, EmptyStoreReturnsNothing) {
    EXPECT_TRUE(InstanceStore().query({0, 0, 1, 1}).empty());
}

TEST(ClassStats, CountsFrequenciesAndMerge) {
    SemanticMap a(4, 1);
    a[0] = 0;
    a[1] = 1;
    a[2] = 1;
    a[3] = 2;
    ClassStats s = accumulate_stats(ClassStats(3), a);
    EXPECT_EQ(s.total(), 4u);
    EXPECT_DOUBLE_EQ(s.frequency(1), 0.5);
    ClassStats t = accumulate_stats(ClassStats(3), a);
    t.merge(s);
    EXPECT_EQ(t.count(1), 4u);
    EXPECT_DOUBLE_EQ(ClassStats(3).frequency(0), 0.0);
}

TEST(ClassStats, MergeIsOrderIndependent) {
    CounterRng rng(2);
    std::vector<ClassStats> parts;
    for (int i = 0; i < 5; ++i) {
        SemanticMap m(8, 8);
        for (auto& v : m.storage()) v = static_cast<ClassId>(rng.below(5));
        parts.push_back(accumulate_stats(ClassStats(5), m));
    }
    ClassStats fwd(5), rev(5);
    for (const auto& p : parts) fwd.merge(p);
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) rev.merge(*it);
    EXPECT_EQ(fwd, rev);
}

TEST(ClassStats, JsonRoundTripAndLabelCheck) {
    SemanticMap m(2, 2, 1);
    const ClassStats s = accumulate_stats(ClassStats(3), m);
    EXPECT_EQ(ClassStats::from_json(s.to_json("flair16", "ds")), s);
    m[0] = 7;
    EXPECT_THROW((void)accumulate_stats(ClassStats(3), m), LabelError);
}
