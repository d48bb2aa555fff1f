#pragma once

#include "hyscdg/raster.hpp"

namespace hyscdg {

enum class Connectivity { Four = 4, Eight = 8 };

/// Exact squared Euclidean distance from every pixel to the nearest set pixel
/// (separable lower-envelope transform). Infinity everywhere when the mask is empty.
[[nodiscard]] Grid<double> squared_distance_transform(const BitMask& mask);

/// Set wherever the Euclidean distance to a set pixel is <= radius.
[[nodiscard]] BitMask dilate(const BitMask& mask, double radius);

/// 1 on the core, 1 - d/band for d in (0, band], 0 beyond.
[[nodiscard]] SoftMask feather(const BitMask& core, double band);

/// Component labels 1..n in row-major order of each component's first pixel; 0 is background.
struct ComponentLabels {
    Grid<int> labels;
    std::vector<std::size_t> sizes; // sizes[k] is the size of label k + 1
};

[[nodiscard]] ComponentLabels label_components(const BitMask& mask,
                                               Connectivity connectivity = Connectivity::Eight);

/// Largest component; ties go to the component whose first row-major pixel comes first.
[[nodiscard]] BitMask largest_component(const BitMask& mask,
                                        Connectivity connectivity = Connectivity::Eight);

/// Pixels whose centers lie in the convex hull of the set pixel centers, boundary included.
[[nodiscard]] BitMask convex_hull_mask(const BitMask& mask);

} // namespace hyscdg
