#include "hyscdg/instance_store.hpp"

#include "hyscdg/raster_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace hyscdg {
namespace {

Ring parse_ring(const nlohmann::json& coords) {
    Ring ring;
    for (const auto& pt : coords) {
        if (!pt.is_array() || pt.size() < 2) throw FormatError("position must have two coordinates");
        ring.push_back({pt[0].get<double>(), pt[1].get<double>()});
    }
    return normalize_ring(std::move(ring));
}

Polygon parse_polygon(const nlohmann::json& rings) {
    if (!rings.is_array() || rings.empty()) throw FormatError("polygon needs at least one ring");
    Polygon poly;
    for (const auto& r : rings) poly.rings.push_back(parse_ring(r));
    return poly;
}

std::string feature_id(const nlohmann::json& feature, std::size_t index) {
    if (feature.contains("id")) {
        const auto& id = feature["id"];
        return id.is_string() ? id.get<std::string>() : id.dump();
    }
    if (feature.contains("properties") && feature["properties"].is_object() &&
        feature["properties"].contains("id")) {
        const auto& id = feature["properties"]["id"];
        return id.is_string() ? id.get<std::string>() : id.dump();
    }
    return "feature-" + std::to_string(index);
}

} // namespace

FootprintLoadReport parse_footprints(const nlohmann::json& collection, double min_area) {
    if (!collection.is_object() || collection.value("type", std::string()) != "FeatureCollection" ||
        !collection.contains("features") || !collection["features"].is_array()) {
        throw FormatError("footprints must be a GeoJSON FeatureCollection");
    }
    FootprintLoadReport report;
    std::size_t index = 0;
    for (const auto& feature : collection["features"]) {
        const std::string id = feature_id(feature, index++);
        try {
            const auto& geom = feature.at("geometry");
            const std::string type = geom.at("type").get<std::string>();
            std::vector<Polygon> parts;
            if (type == "Polygon") {
                parts.push_back(parse_polygon(geom.at("coordinates")));
            } else if (type == "MultiPolygon") {
                for (const auto& p : geom.at("coordinates")) parts.push_back(parse_polygon(p));
            } else {
                throw FormatError("unsupported geometry type " + type);
            }
            std::optional<ClassId> hint;
            if (feature.contains("properties") && feature["properties"].is_object()) {
                const auto& props = feature["properties"];
                if (props.contains("class") && props["class"].is_number_integer()) {
                    hint = static_cast<ClassId>(props["class"].get<int>());
                }
            }
            for (std::size_t k = 0; k < parts.size(); ++k) {
                Polygon& poly = parts[k];
                const bool degenerate = std::any_of(poly.rings.begin(), poly.rings.end(),
                                                    [](const Ring& r) { return r.size() < 3; });
                const double area = degenerate ? 0.0 : polygon_area(poly);
                if (!(area > 0.0) || area < min_area) {
                    ++report.degenerate_dropped;
                    continue;
                }
                validate_polygon(poly);
                InstanceFootprint fp;
                fp.id = type == "MultiPolygon" ? id + "#" + std::to_string(k) : id;
                fp.bbox = bounding_box(poly);
                fp.polygon = std::move(poly);
                fp.class_hint = hint;
                report.footprints.push_back(std::move(fp));
            }
        } catch (const nlohmann::json::exception& e) {
            report.feature_errors.push_back(id + ": " + e.what());
        } catch (const Error& e) {
            report.feature_errors.push_back(id + ": " + e.what());
        }
    }
    return report;
}

FootprintLoadReport load_footprints(const std::filesystem::path& path, double min_area) {
    return parse_footprints(read_json(path), min_area);
}

InstanceStore::InstanceStore(std::vector<InstanceFootprint> footprints)
    : footprints_(std::move(footprints)) {
    std::sort(footprints_.begin(), footprints_.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    if (footprints_.empty()) return;
    bounds_ = footprints_.front().bbox;
    double mean_extent = 0.0;
    for (const auto& fp : footprints_) {
        bounds_.min_x = std::min(bounds_.min_x, fp.bbox.min_x);
        bounds_.min_y = std::min(bounds_.min_y, fp.bbox.min_y);
        bounds_.max_x = std::max(bounds_.max_x, fp.bbox.max_x);
        bounds_.max_y = std::max(bounds_.max_y, fp.bbox.max_y);
        mean_extent += std::max(fp.bbox.max_x - fp.bbox.min_x, fp.bbox.max_y - fp.bbox.min_y);
    }
    mean_extent /= static_cast<double>(footprints_.size());
    const double span = std::max(bounds_.max_x - bounds_.min_x, bounds_.max_y - bounds_.min_y);
    // Cells a few footprints wide, capped so the grid stays around 1024 x 1024 at most.
    cell_size_ = std::max({2.0 * mean_extent, span / 1024.0, 1e-9});
    cols_ = static_cast<int>(std::floor((bounds_.max_x - bounds_.min_x) / cell_size_)) + 1;
    rows_ = static_cast<int>(std::floor((bounds_.max_y - bounds_.min_y) / cell_size_)) + 1;
    cells_.assign(static_cast<std::size_t>(cols_) * rows_, {});
    for (std::uint32_t i = 0; i < footprints_.size(); ++i) {
        const auto [c0, r0] = cell_of(footprints_[i].bbox.min_x, footprints_[i].bbox.min_y);
        const auto [c1, r1] = cell_of(footprints_[i].bbox.max_x, footprints_[i].bbox.max_y);
        for (int r = r0; r <= r1; ++r) {
            for (int c = c0; c <= c1; ++c) cells_[static_cast<std::size_t>(r) * cols_ + c].push_back(i);
        }
    }
}

std::pair<int, int> InstanceStore::cell_of(double x, double y) const noexcept {
    const double fc = std::floor((x - bounds_.min_x) / cell_size_);
    const double fr = std::floor((y - bounds_.min_y) / cell_size_);
    const int c = static_cast<int>(std::clamp(fc, 0.0, static_cast<double>(cols_ - 1)));
    const int r = static_cast<int>(std::clamp(fr, 0.0, static_cast<double>(rows_ - 1)));
    return {c, r};
}

std::vector<InstanceFootprint> InstanceStore::query(const Rect& extent) const {
    std::vector<InstanceFootprint> out;
    if (footprints_.empty() || !bounds_.intersects(extent)) return out;
    const auto [c0, r0] = cell_of(extent.min_x, extent.min_y);
    const auto [c1, r1] = cell_of(extent.max_x, extent.max_y);
    std::vector<std::uint32_t> candidates;
    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            const auto& cell = cells_[static_cast<std::size_t>(r) * cols_ + c];
            candidates.insert(candidates.end(), cell.begin(), cell.end());
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    // Indices follow id order, so the output is sorted by id.
    for (const auto i : candidates) {
        const auto& fp = footprints_[i];
        if (fp.bbox.intersects(extent) && polygon_intersects_rect(fp.polygon, extent)) out.push_back(fp);
    }
    return out;
}

ClassStats::ClassStats(std::vector<std::uint64_t> counts)
    : counts_(std::move(counts)),
      total_(std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0})) {}

double ClassStats::frequency(ClassId c) const {
    if (total_ == 0) return 0.0;
    return static_cast<double>(counts_.at(c)) / static_cast<double>(total_);
}

std::vector<double> ClassStats::frequencies() const {
    std::vector<double> f(counts_.size(), 0.0);
    for (std::size_t c = 0; c < counts_.size(); ++c) f[c] = frequency(static_cast<ClassId>(c));
    return f;
}

void ClassStats::merge(const ClassStats& other) {
    if (counts_.empty()) counts_.assign(other.counts_.size(), 0);
    if (other.counts_.size() != counts_.size()) throw Error("class stats with different class counts");
    for (std::size_t c = 0; c < counts_.size(); ++c) counts_[c] += other.counts_[c];
    total_ += other.total_;
}

nlohmann::json ClassStats::to_json(const std::string& class_table_id, const std::string& dataset_id) const {
    return {{"dataset_id", dataset_id},
            {"class_table_id", class_table_id},
            {"total_pixels", total_},
            {"counts", counts_},
            {"frequencies", frequencies()}};
}

ClassStats ClassStats::from_json(const nlohmann::json& j) {
    try {
        return ClassStats(j.at("counts").get<std::vector<std::uint64_t>>());
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed class stats: ") + e.what());
    }
}

ClassStats accumulate_stats(ClassStats stats, const SemanticMap& map) {
    map.check_labels(stats.class_count());
    for (const auto label : map.values()) ++stats.counts_[label];
    stats.total_ += map.size();
    return stats;
}

} // namespace hyscdg
