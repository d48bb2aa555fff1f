#include "hyscdg/manifest.hpp"
#include "hyscdg/rng.hpp"

#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

using namespace hyscdg;

namespace {

std::vector<std::string> ids(const std::string& prefix, int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

std::filesystem::path fs_example_path() { return std::filesystem::path(HYSCDG_SOURCE_DIR) / "data" / "remap_example.json"; }

} // namespace

TEST(Subsample, CountsAreTheCeiling) {
    const auto target = ids("t", 97);
    for (const double f : {1.0, 5.0, 10.0, 33.3, 50.0, 100.0}) {
        const Manifest m = subsample(target, f, 1);
        const auto want = static_cast<std::size_t>(std::ceil(f / 100.0 * 97 - 1e-9));
        EXPECT_EQ(m.entries.size(), want) << f;
        std::set<std::string> seen;
        for (const auto& e : m.entries) {
            EXPECT_TRUE(seen.insert(e.pair_id).second) << "repeat " << e.pair_id;
            EXPECT_EQ(e.origin, Origin::Target);
        }
    }
    EXPECT_EQ(subsample(ids("t", 10), 10.0, 3).entries.size(), 1u);
    EXPECT_THROW((void)subsample(target, 0.0, 1), ConfigError);
    EXPECT_THROW((void)subsample(target, 101.0, 1), ConfigError);
    EXPECT_THROW((void)subsample({}, 50.0, 1), ConfigError);
}

TEST(Subsample, DeterministicAndSeedDependent) {
    const auto target = ids("t", 200);
    EXPECT_EQ(subsample(target, 10, 4).entries, subsample(target, 10, 4).entries);
    EXPECT_NE(subsample(target, 10, 4).entries, subsample(target, 10, 5).entries);
}

TEST(Subsample, OverlapBetweenSeedsIsHypergeometric) {
    // Two independent 20-of-100 draws overlap by 4 on average.
    const auto target = ids("t", 100);
    double total = 0;
    constexpr int kTrials = 2000;
    for (int s = 0; s < kTrials; ++s) {
        const Manifest a = subsample(target, 20, 2 * s), b = subsample(target, 20, 2 * s + 1);
        std::set<std::string> sa;
        for (const auto& e : a.entries) sa.insert(e.pair_id);
        for (const auto& e : b.entries) total += sa.count(e.pair_id);
    }
    // sd of the mean: sqrt(20 * 0.2 * 0.8 * 80 / 99) / sqrt(2000) ~ 0.04
    EXPECT_NEAR(total / kTrials, 4.0, 0.2);
}

TEST(Mix, TargetCountGrid) {
    const auto target = ids("t", 40), source = ids("s", 500);
    for (const double ratio : {0.0, 20.0, 50.0, 90.0, 100.0}) {
        for (const std::size_t epoch : {10u, 97u, 200u}) {
            const auto want = static_cast<std::size_t>(std::llround(ratio / 100.0 * static_cast<double>(epoch)));
            EXPECT_EQ(mix_target_count(ratio, epoch), want);
            const Manifest m = mix(target, source, ratio, epoch, 9);
            EXPECT_EQ(m.count(Origin::Target), want) << ratio << " " << epoch;
            EXPECT_EQ(m.count(Origin::Source), epoch - want);
            EXPECT_EQ(m.entries.size(), epoch);
        }
    }
    EXPECT_EQ(mix_target_count(50.0, 97), 49u); // 48.5 rounds up
}

TEST(Mix, SmallTargetRepeatsWithMultiplicity) {
    const auto target = ids("t", 30), source = ids("s", 1000);
    const Manifest m = mix(target, source, 90, 200, 2);
    ASSERT_EQ(m.count(Origin::Target), 180u);
    std::map<std::string, int> mult;
    for (const auto& e : m.entries)
        if (e.origin == Origin::Target) ++mult[e.pair_id];
    EXPECT_LE(mult.size(), 30u);
    int total = 0;
    for (const auto& [id, n] : mult) total += n;
    EXPECT_EQ(total, 180);
    EXPECT_GT(mult.size(), 25u);

    std::set<std::string> src;
    for (const auto& e : m.entries)
        if (e.origin == Origin::Source) EXPECT_TRUE(src.insert(e.pair_id).second);
}

TEST(Mix, RejectsImpossibleSpecs) {
    EXPECT_THROW((void)mix({}, ids("s", 3), 50, 10, 1), ConfigError);
    EXPECT_THROW((void)mix(ids("t", 3), {}, 50, 10, 1), ConfigError);
    EXPECT_THROW((void)mix(ids("t", 3), ids("s", 3), 120, 10, 1), ConfigError);
    EXPECT_THROW((void)mix(ids("t", 3), ids("s", 3), 50, 0, 1), ConfigError);
    EXPECT_NO_THROW((void)mix({}, ids("s", 3), 0, 10, 1));
}

TEST(Sequential, SourceBlockThenTargetBlock) {
    const Manifest m = sequential(ids("s", 5), ids("t", 3), 1);
    ASSERT_EQ(m.entries.size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(m.entries[i].origin, i < 5 ? Origin::Source : Origin::Target);
    EXPECT_EQ(zero_shot(ids("s", 4), 1).count(Origin::Source), 4u);
    EXPECT_EQ(to_json(m)["entries"].size(), 8u);
}

TEST(Scenario, NamesRoundTrip) {
    for (const Scenario s : {Scenario::Sequential, Scenario::LowData, Scenario::Mixed, Scenario::ZeroShot}) {
        EXPECT_EQ(scenario_from_string(to_string(s)), s);
    }
    EXPECT_THROW((void)scenario_from_string("finetune"), ConfigError);
}

TEST(Remap, IdentityLeavesMapsUnchanged) {
    CounterRng rng(1);
    SemanticMap a(8, 8), b(8, 8);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<ClassId>(rng.below(16));
        b[i] = static_cast<ClassId>(rng.below(16));
    }
    const RemapTable id = RemapTable::identity(16);
    const RemappedPair r = remap_pair(a, b, id);
    EXPECT_EQ(r.first, a);
    EXPECT_EQ(r.second, b);
    EXPECT_EQ(r.change, ChangeMap::between(a, b, 16));
    EXPECT_EQ(r.valid.count(), a.size());
}

TEST(Remap, SixteenToTwoMergesTrajectories) {
    nlohmann::json map = nlohmann::json::object();
    for (int c = 0; c < 16; ++c) map[std::to_string(c)] = c == 0 ? 1 : 0; // building vs rest
    const RemapTable t = RemapTable::from_json({{"map", map}});
    t.require_total(16);
    EXPECT_EQ(t.target_count(), 2);
    SemanticMap a(3, 1), b(3, 1);
    a[0] = 0; b[0] = 4;  // building -> water: changed
    a[1] = 5; b[1] = 9;  // vegetation -> vegetation: merged, unchanged
    a[2] = 2; b[2] = 2;
    const RemappedPair r = remap_pair(a, b, t);
    EXPECT_EQ(r.change[0], ChangeMap::encode(1, 0, 2));
    EXPECT_EQ(r.change[1], 0);
    EXPECT_EQ(r.change[2], 0);
    const auto [c, valid] = remap_change(ChangeMap::between(a, b, 16), 16, t);
    EXPECT_EQ(c, r.change);
    EXPECT_EQ(valid.count(), 3u);
}

TEST(Remap, DroppedClassesAreIgnored) {
    const RemapTable t = RemapTable::from_json({{"map", {{"0", 0}, {"1", 1}}}, {"drop", {2}}});
    t.require_total(3);
    EXPECT_EQ(t.apply(2), kIgnoreLabel);
    EXPECT_THROW(t.require_total(4), ConfigError);
    EXPECT_THROW((void)t.apply(3), LabelError);
    SemanticMap a(2, 1), b(2, 1);
    a[0] = 2; b[0] = 0;
    a[1] = 0; b[1] = 1;
    const RemappedPair r = remap_pair(a, b, t);
    EXPECT_EQ(r.first[0], kIgnoreLabel);
    EXPECT_FALSE(r.valid[0]);
    EXPECT_EQ(r.change[0], 0);
    EXPECT_TRUE(r.valid[1]);
    EXPECT_EQ(r.change[1], ChangeMap::encode(0, 1, 2));
}

TEST(Remap, MalformedTablesAreConfigErrors) {
    EXPECT_THROW((void)RemapTable::from_json({{"drop", {1}}}), ConfigError);
    EXPECT_THROW((void)RemapTable::from_json({{"map", {{"x", 1}}}}), ConfigError);
    EXPECT_THROW((void)RemapTable::from_json({{"map", {{"1", 1}}}, {"drop", {1}}}), ConfigError);
    EXPECT_THROW((void)RemapTable::from_json({{"map", {{"1", 300}}}}), ConfigError);
    const RemapTable t = RemapTable::from_json({{"map", {{"0", 1}, {"1", 0}}}});
    EXPECT_EQ(RemapTable::from_json(t.to_json()).apply(0), 1);
}

TEST(Remap, ShippedExampleIsTotalOverTheDefaultTable) {
    const RemapTable t = RemapTable::load(fs_example_path());
    t.require_total(16);
    EXPECT_EQ(t.target_count(), 5);
    EXPECT_EQ(t.apply(13), kIgnoreLabel);
    EXPECT_EQ(t.apply(12), 2);
}
