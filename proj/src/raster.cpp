#include "hyscdg/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hyscdg {

std::size_t BitMask::count() const noexcept {
    return static_cast<std::size_t>(std::count_if(storage().begin(), storage().end(),
                                                  [](std::uint8_t v) { return v != 0; }));
}

bool BitMask::any() const noexcept {
    return std::any_of(storage().begin(), storage().end(), [](std::uint8_t v) { return v != 0; });
}

BitMask& BitMask::operator|=(const BitMask& other) {
    if (!same_shape(other)) throw Error("mask shape mismatch in union");
    for (std::size_t i = 0; i < size(); ++i) (*this)[i] = ((*this)[i] | other[i]) ? 1 : 0;
    return *this;
}

BitMask& BitMask::operator&=(const BitMask& other) {
    if (!same_shape(other)) throw Error("mask shape mismatch in intersection");
    for (std::size_t i = 0; i < size(); ++i) (*this)[i] = ((*this)[i] && other[i]) ? 1 : 0;
    return *this;
}

bool BitMask::subset_of(const BitMask& other) const {
    if (!same_shape(other)) return false;
    for (std::size_t i = 0; i < size(); ++i) {
        if ((*this)[i] && !other[i]) return false;
    }
    return true;
}

std::uint8_t quantize_weight(double w) noexcept {
    const double c = std::clamp(w, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::floor(c * 255.0 + 0.5));
}

Grid<std::uint8_t> quantize(const SoftMask& mask) {
    Grid<std::uint8_t> out(mask.width(), mask.height());
    for (std::size_t i = 0; i < mask.size(); ++i) out[i] = quantize_weight(mask[i]);
    return out;
}

void SemanticMap::check_labels(int class_count) const {
    for (int y = 0; y < height(); ++y) {
        for (int x = 0; x < width(); ++x) {
            if ((*this)(x, y) >= class_count) {
                throw LabelError("label " + std::to_string((*this)(x, y)) + " at (" +
                                 std::to_string(x) + ", " + std::to_string(y) +
                                 ") is outside the class table of size " +
                                 std::to_string(class_count));
            }
        }
    }
}

ChangeMap ChangeMap::between(const SemanticMap& first, const SemanticMap& second, int class_count) {
    if (!first.same_shape(second)) throw Error("semantic map shape mismatch");
    ChangeMap out(first.width(), first.height());
    for (std::size_t i = 0; i < first.size(); ++i) {
        if (first[i] != second[i]) out[i] = encode(first[i], second[i], class_count);
    }
    return out;
}

BitMask ChangeMap::binary() const {
    BitMask out(width(), height());
    for (std::size_t i = 0; i < size(); ++i) out[i] = (*this)[i] != 0 ? 1 : 0;
    return out;
}

std::size_t ChangeMap::changed_pixels() const noexcept {
    return static_cast<std::size_t>(std::count_if(storage().begin(), storage().end(),
                                                  [](std::uint16_t v) { return v != 0; }));
}

RasterTile::RasterTile(std::string tile_id, int width, int height, GeoRef geo)
    : tile_id_(std::move(tile_id)), width_(width), height_(height), geo_(std::move(geo)) {
    if (width <= 0 || height <= 0) throw Error("tile dimensions must be positive");
    if (!(geo_.gsd > 0.0)) throw Error("tile gsd must be positive");
    pixels_.assign(plane_size() * kBandCount, 0);
}

std::span<std::uint8_t> RasterTile::band(Band b) noexcept {
    return std::span<std::uint8_t>(pixels_).subspan(static_cast<std::size_t>(b) * plane_size(),
                                                    plane_size());
}

std::span<const std::uint8_t> RasterTile::band(Band b) const noexcept {
    return std::span<const std::uint8_t>(pixels_).subspan(
        static_cast<std::size_t>(b) * plane_size(), plane_size());
}

} // namespace hyscdg
