#pragma once

#include "hyscdg/change_planner.hpp"
#include "hyscdg/class_table.hpp"
#include "hyscdg/inpaint.hpp"
#include "hyscdg/instance_store.hpp"
#include "hyscdg/raster_io.hpp"

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hyscdg {

/// Source layout: `<root>/tiles/<tile_id>/{image.tif,semantic.png,meta.json}`,
/// `<root>/footprints.geojson`, optional `<root>/class_table.json`.
class SourceDataset {
public:
    static SourceDataset open(const std::filesystem::path& root, double min_footprint_area = 0.0,
                              const std::optional<std::filesystem::path>& class_table = std::nullopt);

    [[nodiscard]] const std::filesystem::path& root() const noexcept { return root_; }
    [[nodiscard]] const ClassTable& classes() const noexcept { return classes_; }
    [[nodiscard]] const std::vector<std::string>& tile_ids() const noexcept { return tile_ids_; }
    [[nodiscard]] const InstanceStore& instances() const noexcept { return instances_; }
    [[nodiscard]] std::size_t degenerate_footprints() const noexcept { return degenerate_; }
    [[nodiscard]] const std::vector<std::string>& footprint_errors() const noexcept { return footprint_errors_; }

    [[nodiscard]] TileBundle load_tile(const std::string& tile_id) const;
    /// Footprints intersecting the tile extent, sorted by id.
    [[nodiscard]] std::vector<InstanceFootprint> footprints_for(const TileBundle& tile) const;

private:
    SourceDataset(std::filesystem::path root, ClassTable classes) : root_(std::move(root)), classes_(std::move(classes)) {}

    std::filesystem::path root_;
    ClassTable classes_;
    std::vector<std::string> tile_ids_;
    InstanceStore instances_;
    std::size_t degenerate_ = 0;
    std::vector<std::string> footprint_errors_;
};

/// Pixel counts of every source semantic map.
[[nodiscard]] ClassStats compute_class_stats(const SourceDataset& source);

struct VariantOutput {
    int variant = 0;
    std::uint64_t seed = 0;
    std::optional<ChangePlan> plan;
    /// Inpainted image; empty for plan-only runs and failures.
    std::optional<RasterTile> image;
    std::string backend;
    /// Non-empty when the variant failed.
    std::string error;

    [[nodiscard]] bool ok() const noexcept { return error.empty(); }
};

/// Builds V plans (and, with a backend, V inpainted images) for one tile. A failing
/// variant is recorded in its VariantOutput and never affects the others.
[[nodiscard]] std::vector<VariantOutput> generate_variants(const TileBundle& tile,
                                                           const std::vector<InstanceFootprint>& footprints,
                                                           const ClassStats& stats, const ClassTable& classes,
                                                           InpaintBackend* backend, const PlannerConfig& config,
                                                           std::uint64_t master_seed);

/// Writes `<out>/<tile>/real/...`, `<out>/<tile>/v<k>/...` and, last, `<out>/<tile>/tile.json`.
void write_tile_outputs(const std::filesystem::path& out, const TileBundle& tile,
                        const std::vector<VariantOutput>& variants, const ClassTable& classes);

/// Plan-only output: `<out>/plans/<tile>_v<k>.json`.
void write_plan_files(const std::filesystem::path& out, const std::string& tile_id,
                      const std::vector<VariantOutput>& variants);

enum class Provenance { RealSynth, SynthSynth };

struct RasterRef {
    std::string image;
    std::string semantic;
    friend bool operator==(const RasterRef&, const RasterRef&) = default;
};

struct SamplePair {
    std::string pair_id;
    std::string tile_id;
    Provenance provenance = Provenance::RealSynth;
    /// Variant indices; -1 stands for the real tile.
    int first_variant = -1;
    int second_variant = 0;
    RasterRef first;
    RasterRef second;
    std::string change;
    std::vector<std::uint64_t> seeds;
    friend bool operator==(const SamplePair&, const SamplePair&) = default;
};

/// Successful variant of one tile, as needed for pair expansion.
struct VariantRecord {
    int variant = 0;
    std::uint64_t seed = 0;
    SemanticMap planned;
};

/// (real, v_k) pairs, then sibling (v_j, v_k) pairs for j < k when `siblings` is set.
/// Sibling change maps are the trajectory between the two planned maps.
[[nodiscard]] std::vector<SamplePair> expand_pairs(const std::string& tile_id,
                                                   const std::vector<VariantRecord>& variants, bool siblings);

[[nodiscard]] ChangeMap sibling_change(const VariantRecord& first, const VariantRecord& second, int class_count);

/// Fraction of core pixels where `segmentation` disagrees with `planned`; 0 for an empty core.
[[nodiscard]] double consistency_rate(const SemanticMap& planned, const SemanticMap& segmentation,
                                      const BitMask& core);

inline constexpr double kConsistencyThreshold = 0.20;

struct BandMoments {
    std::uint64_t count = 0;
    std::uint64_t sum = 0;
    unsigned __int128 sum_sq = 0;

    void add(std::span<const std::uint8_t> values) noexcept;
    [[nodiscard]] double mean() const noexcept;
    /// Population variance.
    [[nodiscard]] double variance() const noexcept;
};

struct IndexFailure {
    std::string tile_id;
    int variant = -1;
    std::string reason;
};

struct DatasetIndex {
    std::string class_table_id;
    int class_count = 0;
    std::vector<SamplePair> pairs;
    std::vector<IndexFailure> failures;
    std::uint64_t pixel_count = 0;
    std::uint64_t changed_pixels = 0;
    std::vector<std::uint64_t> class_histogram;
    std::array<BandMoments, kBandCount> bands{};
    nlohmann::json consistency = nlohmann::json::array();

    /// changed / total pixels over all pairs, in percent.
    [[nodiscard]] double prevalence_percent() const noexcept;
};

struct AssembleOptions {
    bool siblings = true;
    /// External segmentation maps `<dir>/<tile>/v<k>.png` for the consistency check.
    std::optional<std::filesystem::path> segmentation_dir;
};

/// Writes sibling change maps, then scans completed tiles (those with `tile.json`) and
/// builds the index. Missing or unreadable rasters become failures; the index still builds.
[[nodiscard]] DatasetIndex assemble(const std::filesystem::path& out, const ClassTable& classes,
                                    const AssembleOptions& options = {});

[[nodiscard]] nlohmann::json to_json(const DatasetIndex& index);

/// Paths inside an output root are stored relative to it with '/' separators.
[[nodiscard]] std::string relative_ref(const std::filesystem::path& root, const std::filesystem::path& p);

/// Runs `fn(i)` for i in [0, n) on `jobs` threads. Workers stop picking new items once
/// `stop` is set; in-flight items finish. Returns the number of items processed.
std::size_t parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn,
                         const std::atomic<bool>* stop = nullptr);

} // namespace hyscdg
