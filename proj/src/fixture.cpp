#include "hyscdg/fixture.hpp"

#include "hyscdg/geometry.hpp"
#include "hyscdg/raster_io.hpp"
#include "hyscdg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace hyscdg {

namespace {

constexpr ClassId kBackground[] = {1, 2, 3, 5, 6, 7, 9, 10, 11};
constexpr ClassId kInstanceClasses[] = {0, 0, 0, 0, 12, 4, 10, 2};
constexpr const char* kLocalities[][2] = {{"Savigny-en-Revermont", "Bourgogne-Franche-Comté"},
                                          {"Saint-Jory", "Occitanie"},
                                          {"Plouguerneau", "Bretagne"},
                                          {"Lunel", "Occitanie"}};

std::string tile_name(int i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "T%03d", i);
    return buf;
}

Polygon rotated_rect(Point center, double w, double h, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Ring ring;
    for (const auto& [dx, dy] : {std::pair{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}) {
        const double x = dx * w, y = dy * h;
        ring.push_back({center.x + x * c - y * s, center.y + x * s + y * c});
    }
    return Polygon{{ring}};
}

} // namespace

FixtureReport write_fixture(const std::filesystem::path& root, const FixtureOptions& o) {
    if (o.tiles < 1 || o.size < 8 || o.min_instances < 0 || o.max_instances < o.min_instances ||
        o.instance_min_px < 1 || o.instance_max_px < o.instance_min_px) {
        throw ConfigError("invalid fixture options");
    }
    const ClassTable classes = ClassTable::flair16();
    const CounterRng root_rng(o.seed);
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(o.tiles))));
    const double span = o.size * o.gsd;
    FixtureReport report;
    nlohmann::json features = nlohmann::json::array();

    for (int t = 0; t < o.tiles; ++t) {
        const std::string id = tile_name(t);
        CounterRng rng = root_rng.split(id);
        GeoRef geo;
        geo.gsd = o.gsd;
        geo.origin_x = 800000.0 + (t % cols) * span;
        geo.origin_y = 6500000.0 - (t / cols) * span;

        SemanticMap map(o.size, o.size);
        constexpr int kSites = 5;
        int sx[kSites], sy[kSites];
        ClassId sc[kSites];
        for (int i = 0; i < kSites; ++i) {
            sx[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(o.size)));
            sy[i] = static_cast<int>(rng.below(static_cast<std::uint64_t>(o.size)));
            sc[i] = kBackground[rng.below(std::size(kBackground))];
        }
        for (int y = 0; y < o.size; ++y) {
            for (int x = 0; x < o.size; ++x) {
                int best = 0;
                long best_d = -1;
                for (int i = 0; i < kSites; ++i) {
                    const long d = static_cast<long>(x - sx[i]) * (x - sx[i]) + static_cast<long>(y - sy[i]) * (y - sy[i]);
                    if (best_d < 0 || d < best_d) {
                        best_d = d;
                        best = i;
                    }
                }
                map(x, y) = sc[best];
            }
        }

        const int n = o.min_instances +
                      static_cast<int>(rng.below(static_cast<std::uint64_t>(o.max_instances - o.min_instances + 1)));
        for (int i = 0; i < n; ++i) {
            const int range = o.instance_max_px - o.instance_min_px + 1;
            const double w = o.instance_min_px + static_cast<double>(rng.below(static_cast<std::uint64_t>(range)));
            const double h = o.instance_min_px + static_cast<double>(rng.below(static_cast<std::uint64_t>(range)));
            const double margin = std::max(w, h) / 2.0;
            const double px = margin + rng.uniform01() * std::max(0.0, o.size - 2 * margin);
            const double py = margin + rng.uniform01() * std::max(0.0, o.size - 2 * margin);
            const double angle = rng.uniform01() * std::numbers::pi / 2.0;
            const ClassId cls = kInstanceClasses[rng.below(std::size(kInstanceClasses))];
            const Point center{geo.origin_x + px * o.gsd, geo.origin_y - py * o.gsd};
            const Polygon poly = rotated_rect(center, w * o.gsd, h * o.gsd, angle);
            const BitMask mask = rasterize_polygon(poly, geo, o.size, o.size);
            for (std::size_t p = 0; p < mask.size(); ++p) {
                if (mask[p]) map[p] = cls;
            }
            nlohmann::json coords = nlohmann::json::array();
            for (const auto& v : poly.rings[0]) coords.push_back({v.x, v.y});
            coords.push_back({poly.rings[0][0].x, poly.rings[0][0].y});
            features.push_back({{"type", "Feature"},
                                {"id", id + "-" + std::to_string(i)},
                                {"properties", {{"class", cls}}},
                                {"geometry", {{"type", "Polygon"}, {"coordinates", {coords}}}}});
            ++report.footprints;
        }

        RasterTile image(id, o.size, o.size, geo);
        image.elevation_min = 100.0;
        image.elevation_max = 150.0;
        CounterRng noise = rng.split("image");
        const auto clamp8 = [](int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); };
        for (std::size_t p = 0; p < map.size(); ++p) {
            const ClassInfo& info = classes[map[p]];
            for (int b = 0; b < 3; ++b) {
                image.band(b)[p] = clamp8(info.color[b] + static_cast<int>(noise.below(21)) - 10);
            }
            image.band(Band::Nir)[p] = clamp8(info.nir_level + static_cast<int>(noise.below(21)) - 10);
            image.band(Band::Elevation)[p] = info.elevation_level;
        }

        TileBundle bundle;
        bundle.meta.tile_id = id;
        bundle.meta.geo = geo;
        bundle.meta.elevation_min = image.elevation_min;
        bundle.meta.elevation_max = image.elevation_max;
        const auto& place = kLocalities[static_cast<std::size_t>(t) % std::size(kLocalities)];
        bundle.meta.locality = place[0];
        bundle.meta.region = place[1];
        char acquired[32];
        std::snprintf(acquired, sizeof acquired, "2021-%02d-14T%02d:30:00", 1 + t % 12, 8 + t % 9);
        bundle.meta.acquired = acquired;
        bundle.image = std::move(image);
        bundle.semantic = std::move(map);
        save_tile_dir(root / "tiles" / id, bundle);
        report.tile_ids.push_back(id);
    }
    write_json(root / "footprints.geojson", {{"type", "FeatureCollection"}, {"features", features}});
    return report;
}

} // namespace hyscdg
