#pragma once

#include "hyscdg/error.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hyscdg {

using ClassId = std::uint8_t;

/// Dense row-major 2-D array.
template <class T>
class Grid {
public:
    using value_type = T;

    Grid() = default;
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height),
          data_(checked_size(width, height), fill) {}

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
    const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }
    T& operator[](std::size_t i) noexcept { return data_[i]; }
    const T& operator[](std::size_t i) const noexcept { return data_[i]; }

    [[nodiscard]] std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    [[nodiscard]] std::span<T> values() noexcept { return data_; }
    [[nodiscard]] std::span<const T> values() const noexcept { return data_; }
    [[nodiscard]] std::vector<T>& storage() noexcept { return data_; }
    [[nodiscard]] const std::vector<T>& storage() const noexcept { return data_; }

    [[nodiscard]] bool same_shape(const auto& other) const noexcept {
        return width_ == other.width() && height_ == other.height();
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    static std::size_t checked_size(int width, int height) {
        if (width < 0 || height < 0) {
            throw Error("grid dimensions must be non-negative");
        }
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

/// Boolean raster stored one byte per pixel (0 or 1).
class BitMask : public Grid<std::uint8_t> {
public:
    using Grid::Grid;
    BitMask() = default;
    explicit BitMask(Grid<std::uint8_t> g) : Grid(std::move(g)) {}

    [[nodiscard]] bool test(int x, int y) const noexcept { return (*this)(x, y) != 0; }
    void set(int x, int y, bool v = true) noexcept { (*this)(x, y) = v ? 1 : 0; }
    [[nodiscard]] std::size_t count() const noexcept;
    [[nodiscard]] bool any() const noexcept;

    BitMask& operator|=(const BitMask& other);
    BitMask& operator&=(const BitMask& other);
    /// True when every set pixel of *this is also set in other.
    [[nodiscard]] bool subset_of(const BitMask& other) const;
};

/// Per-pixel weights in [0,1].
class SoftMask : public Grid<double> {
public:
    using Grid::Grid;
    SoftMask() = default;
};

/// 8-bit quantization of a soft mask: round-half-up of weight * 255.
[[nodiscard]] std::uint8_t quantize_weight(double w) noexcept;
[[nodiscard]] Grid<std::uint8_t> quantize(const SoftMask& mask);

class SemanticMap : public Grid<ClassId> {
public:
    using Grid::Grid;
    SemanticMap() = default;
    explicit SemanticMap(Grid<ClassId> g) : Grid(std::move(g)) {}

    /// Throws LabelError naming the first pixel whose label is >= class_count.
    void check_labels(int class_count) const;
};

/// Change trajectories packed as c1 * K + c2 + 1; zero means no change.
class ChangeMap : public Grid<std::uint16_t> {
public:
    using Grid::Grid;
    ChangeMap() = default;
    explicit ChangeMap(Grid<std::uint16_t> g) : Grid(std::move(g)) {}

    [[nodiscard]] static std::uint16_t encode(ClassId from, ClassId to, int class_count) noexcept {
        return static_cast<std::uint16_t>(from * class_count + to + 1);
    }
    [[nodiscard]] static std::pair<ClassId, ClassId> decode(std::uint16_t code, int class_count) noexcept {
        const int v = code - 1;
        return {static_cast<ClassId>(v / class_count), static_cast<ClassId>(v % class_count)};
    }

    /// Pixel-wise trajectory between two maps of the same shape.
    [[nodiscard]] static ChangeMap between(const SemanticMap& first, const SemanticMap& second,
                                           int class_count);

    [[nodiscard]] BitMask binary() const;
    [[nodiscard]] std::size_t changed_pixels() const noexcept;
};

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

struct Rect {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    /// Closed-interval intersection: touching edges count.
    [[nodiscard]] bool intersects(const Rect& o) const noexcept {
        return min_x <= o.max_x && o.min_x <= max_x && min_y <= o.max_y && o.min_y <= max_y;
    }
    [[nodiscard]] bool contains(Point p) const noexcept {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
    friend bool operator==(const Rect&, const Rect&) = default;
};

/// North-up geo-reference: origin is the projected upper-left corner.
struct GeoRef {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double gsd = 1.0;
    std::string crs = "EPSG:2154";

    [[nodiscard]] Point pixel_center(int col, int row) const noexcept {
        return {origin_x + (col + 0.5) * gsd, origin_y - (row + 0.5) * gsd};
    }
    [[nodiscard]] Rect extent(int width, int height) const noexcept {
        return {origin_x, origin_y - height * gsd, origin_x + width * gsd, origin_y};
    }
    friend bool operator==(const GeoRef&, const GeoRef&) = default;
};

enum class Band : int { Red = 0, Green = 1, Blue = 2, Nir = 3, Elevation = 4 };
inline constexpr int kBandCount = 5;

/// Multi-band 8-bit tile, band-sequential storage.
class RasterTile {
public:
    RasterTile() = default;
    RasterTile(std::string tile_id, int width, int height, GeoRef geo);

    [[nodiscard]] const std::string& tile_id() const noexcept { return tile_id_; }
    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] const GeoRef& geo() const noexcept { return geo_; }
    [[nodiscard]] std::size_t plane_size() const noexcept {
        return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
    }

    [[nodiscard]] std::span<std::uint8_t> band(Band b) noexcept;
    [[nodiscard]] std::span<const std::uint8_t> band(Band b) const noexcept;
    [[nodiscard]] std::span<std::uint8_t> band(int b) noexcept { return band(static_cast<Band>(b)); }
    [[nodiscard]] std::span<const std::uint8_t> band(int b) const noexcept {
        return band(static_cast<Band>(b));
    }
    [[nodiscard]] std::vector<std::uint8_t>& pixels() noexcept { return pixels_; }
    [[nodiscard]] const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

    /// Elevation is stored normalized to 8 bits; these are the metric bounds.
    double elevation_min = 0.0;
    double elevation_max = 0.0;

    friend bool operator==(const RasterTile&, const RasterTile&) = default;

private:
    std::string tile_id_;
    int width_ = 0;
    int height_ = 0;
    GeoRef geo_;
    std::vector<std::uint8_t> pixels_;
};

/// Interleaved 8-bit RGB image.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    [[nodiscard]] std::array<std::uint8_t, 3> at(int x, int y) const noexcept {
        const std::size_t i = 3 * (static_cast<std::size_t>(y) * width + x);
        return {pixels[i], pixels[i + 1], pixels[i + 2]};
    }
    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

} // namespace hyscdg
