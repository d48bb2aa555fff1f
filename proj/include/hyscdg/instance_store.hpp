#pragma once

#include "hyscdg/class_table.hpp"
#include "hyscdg/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace hyscdg {

struct InstanceFootprint {
    std::string id;
    Polygon polygon;
    std::optional<ClassId> class_hint;
    Rect bbox;
};

struct FootprintLoadReport {
    std::vector<InstanceFootprint> footprints;
    /// Zero-area (or below the minimum area) parts that were dropped.
    std::size_t degenerate_dropped = 0;
    /// One message per feature that failed to parse; loading continues past them.
    std::vector<std::string> feature_errors;
};

/// Parses a GeoJSON FeatureCollection of Polygon / MultiPolygon features.
/// MultiPolygon parts become separate footprints with ids "<id>#<part>".
/// Throws IoError for an unreadable file, FormatError when the top level is not a collection.
[[nodiscard]] FootprintLoadReport load_footprints(const std::filesystem::path& path,
                                                  double min_area = 0.0);
[[nodiscard]] FootprintLoadReport parse_footprints(const nlohmann::json& collection,
                                                   double min_area = 0.0);

/// Static uniform-grid index over footprint bounding boxes. Read-only after construction.
class InstanceStore {
public:
    InstanceStore() = default;
    explicit InstanceStore(std::vector<InstanceFootprint> footprints);

    /// Footprints whose polygon intersects the closed rectangle, sorted by id.
    [[nodiscard]] std::vector<InstanceFootprint> query(const Rect& extent) const;

    [[nodiscard]] std::size_t size() const noexcept { return footprints_.size(); }
    [[nodiscard]] const std::vector<InstanceFootprint>& footprints() const noexcept { return footprints_; }

private:
    [[nodiscard]] std::pair<int, int> cell_of(double x, double y) const noexcept;

    std::vector<InstanceFootprint> footprints_;
    Rect bounds_{};
    double cell_size_ = 1.0;
    int cols_ = 0;
    int rows_ = 0;
    std::vector<std::vector<std::uint32_t>> cells_;
};

/// Dataset-wide class pixel counts.
class ClassStats {
public:
    ClassStats() = default;
    explicit ClassStats(int class_count) : counts_(static_cast<std::size_t>(class_count), 0) {}
    explicit ClassStats(std::vector<std::uint64_t> counts);

    [[nodiscard]] int class_count() const noexcept { return static_cast<int>(counts_.size()); }
    [[nodiscard]] std::uint64_t count(ClassId c) const { return counts_.at(c); }
    [[nodiscard]] const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
    [[nodiscard]] std::uint64_t total() const noexcept { return total_; }
    /// count / total; 0 for every class while the total is 0.
    [[nodiscard]] double frequency(ClassId c) const;
    [[nodiscard]] std::vector<double> frequencies() const;

    /// Associative, commutative merge of sharded partial statistics.
    void merge(const ClassStats& other);

    [[nodiscard]] nlohmann::json to_json(const std::string& class_table_id,
                                         const std::string& dataset_id) const;
    static ClassStats from_json(const nlohmann::json& j);

    friend bool operator==(const ClassStats&, const ClassStats&) = default;

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;

    friend ClassStats accumulate_stats(ClassStats stats, const SemanticMap& map);
};

/// Adds the map's histogram; throws LabelError for labels outside the stats' class range.
[[nodiscard]] ClassStats accumulate_stats(ClassStats stats, const SemanticMap& map);

} // namespace hyscdg
