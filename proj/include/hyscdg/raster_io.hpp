#pragma once

#include "hyscdg/raster.hpp"

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace hyscdg {

/// Tile sidecar metadata (`meta.json`).
struct TileMeta {
    std::string tile_id;
    GeoRef geo;
    double elevation_min = 0.0;
    double elevation_max = 0.0;
    std::string locality;
    std::string region;
    /// ISO-8601 local acquisition time, e.g. "2021-07-14T09:30:00"; empty when unknown.
    std::string acquired;

    friend bool operator==(const TileMeta&, const TileMeta&) = default;
};

[[nodiscard]] nlohmann::json to_json(const TileMeta& meta);
[[nodiscard]] TileMeta tile_meta_from_json(const nlohmann::json& j);

/// One source tile: image + semantic map + optional change map.
struct TileBundle {
    TileMeta meta;
    RasterTile image;
    SemanticMap semantic;
    std::optional<ChangeMap> change;
};

/// 5-band 8-bit GeoTIFF, band-separate planes, with pixel-scale, tiepoint and geokey tags.
void write_geotiff(const std::filesystem::path& path, const RasterTile& tile);
[[nodiscard]] RasterTile read_geotiff(const std::filesystem::path& path,
                                      const std::string& tile_id = {});

void write_png8(const std::filesystem::path& path, const Grid<std::uint8_t>& gray);
void write_png16(const std::filesystem::path& path, const Grid<std::uint16_t>& gray);
void write_png_rgb(const std::filesystem::path& path, const RgbImage& image);
[[nodiscard]] Grid<std::uint8_t> read_png8(const std::filesystem::path& path);
[[nodiscard]] Grid<std::uint16_t> read_png16(const std::filesystem::path& path);

[[nodiscard]] SemanticMap read_semantic(const std::filesystem::path& path);
[[nodiscard]] ChangeMap read_change(const std::filesystem::path& path);
void write_semantic(const std::filesystem::path& path, const SemanticMap& map);
void write_change(const std::filesystem::path& path, const ChangeMap& map);
/// Soft masks serialize as 8-bit, weight * 255 rounded half-up.
void write_soft_mask(const std::filesystem::path& path, const SoftMask& mask);
void write_bit_mask(const std::filesystem::path& path, const BitMask& mask);

[[nodiscard]] nlohmann::json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline; byte-stable for identical values.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Reads `image.tif`, `semantic.png`, `meta.json` and optional `change.png` from a tile directory.
[[nodiscard]] TileBundle load_tile_dir(const std::filesystem::path& dir);
void save_tile_dir(const std::filesystem::path& dir, const TileBundle& bundle);

} // namespace hyscdg
