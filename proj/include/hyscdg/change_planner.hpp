#pragma once

#include "hyscdg/class_table.hpp"
#include "hyscdg/instance_store.hpp"
#include "hyscdg/morphology.hpp"
#include "hyscdg/prompt.hpp"
#include "hyscdg/raster.hpp"
#include "hyscdg/raster_io.hpp"
#include "hyscdg/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace hyscdg {

inline constexpr int kMaxChangesPerPlan = 3;

struct PlanBudget {
    int available = 0;
    int changes = 0;
    int decoys = 0;
    friend bool operator==(const PlanBudget&, const PlanBudget&) = default;
};

/// changes = min(floor(sqrt(U(0,10))), 3, n);
/// decoys  = min(floor(sqrt(U(0,10) * (1 - changes / 4))), 3, n).
[[nodiscard]] PlanBudget sample_budget(int available, CounterRng& rng);

/// Most frequent label under the mask, smallest id on ties. Throws EmptyMaskError.
[[nodiscard]] ClassId modal_class(const SemanticMap& map, const BitMask& footprint);

/// Convex hull of the largest 8-connected blob of `from_class` inside `buffered`,
/// clipped to `buffered`. Throws EmptyMaskError when no such pixel exists.
[[nodiscard]] BitMask build_change_mask(const SemanticMap& map, const BitMask& footprint,
                                        const BitMask& buffered, ClassId from_class);

/// Draws a class != from_class with weight f_global(c) / (f_local(c) + eps),
/// eps = 1 / (|mask| + K). Falls back to uniform when every weight is zero.
[[nodiscard]] ClassId pick_new_class(const ClassStats& stats, const SemanticMap& map,
                                     const BitMask& change_mask, ClassId from_class, CounterRng& rng);

/// Unnormalized selection weights used by pick_new_class (from_class gets 0).
[[nodiscard]] std::vector<double> new_class_weights(const ClassStats& stats, const SemanticMap& map,
                                                    const BitMask& change_mask, ClassId from_class);

inline constexpr double kDecoyMinFraction = 0.002;
inline constexpr double kDecoyMaxFraction = 0.02;

/// Random blobs of 0.2%..2% of the tile area grown over seeded smoothed noise.
[[nodiscard]] std::vector<BitMask> sample_decoys(int count, int width, int height, CounterRng& rng);

struct PlannerConfig {
    double buffer_px = 8.0;
    double feather_px = 8.0;
    int variants = 3;
    double tau = kDefaultSalienceRatio;

    friend bool operator==(const PlannerConfig&, const PlannerConfig&) = default;
};

[[nodiscard]] nlohmann::json to_json(const PlannerConfig& config);
[[nodiscard]] PlannerConfig planner_config_from_json(const nlohmann::json& j);

struct ChangeItem {
    std::string instance_id;
    ClassId from_class = 0;
    ClassId to_class = 0;
    BitMask footprint;
    BitMask buffered;
    BitMask change;

    friend bool operator==(const ChangeItem&, const ChangeItem&) = default;
};

struct SkippedInstance {
    std::string instance_id;
    std::string reason;
    friend bool operator==(const SkippedInstance&, const SkippedInstance&) = default;
};

/// A replayable plan for one synthetic variant of a tile.
struct ChangePlan {
    std::string tile_id;
    int variant = 0;
    std::uint64_t seed = 0;
    int class_count = 0;
    PlannerConfig config;
    PlanBudget budget;
    std::vector<ChangeItem> items;
    std::vector<SkippedInstance> skipped;
    std::vector<BitMask> decoys;
    /// Union of buffered masks and decoys.
    BitMask inpaint_core;
    /// feather(inpaint_core, config.feather_px).
    SoftMask inpaint;
    SemanticMap planned;
    ChangeMap change;
    PromptSpec prompt_spec;
    std::string prompt;

    friend bool operator==(const ChangePlan&, const ChangePlan&) = default;
};

/// Tile-level inputs of the planner.
struct PlanInput {
    const TileMeta& meta;
    const SemanticMap& semantic;
    const std::vector<InstanceFootprint>& footprints;
    const ClassStats& stats;
    const ClassTable& classes;
};

/// Deterministic in (inputs, variant, seed). Instances are processed in selection order,
/// each reading the working map left by the previous ones.
[[nodiscard]] ChangePlan make_plan(const PlanInput& input, const PlannerConfig& config, int variant,
                                   std::uint64_t seed);

/// Plan JSON with RLE masks; the derived rasters are rebuilt by plan_from_json.
[[nodiscard]] nlohmann::json to_json(const ChangePlan& plan);
/// Rebuilds a plan from its JSON and the tile's real semantic map.
[[nodiscard]] ChangePlan plan_from_json(const nlohmann::json& j, const SemanticMap& real);

} // namespace hyscdg
