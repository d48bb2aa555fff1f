#pragma once

#include "hyscdg/class_table.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hyscdg {

/// Synthetic source dataset: Voronoi land cover with rotated-rectangle instances painted
/// over it. Instance footprints are exported as GeoJSON and match the semantic map.
struct FixtureOptions {
    int tiles = 16;
    int size = 128;
    double gsd = 0.2;
    std::uint64_t seed = 1;
    int min_instances = 3;
    int max_instances = 6;
    /// Side length range of instance rectangles, in pixels.
    int instance_min_px = 10;
    int instance_max_px = 24;
};

struct FixtureReport {
    std::vector<std::string> tile_ids;
    std::size_t footprints = 0;
};

/// Writes `<root>/tiles/<id>/...` and `<root>/footprints.geojson` using the default class table.
FixtureReport write_fixture(const std::filesystem::path& root, const FixtureOptions& options = {});

} // namespace hyscdg
