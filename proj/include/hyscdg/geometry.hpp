#pragma once

#include "hyscdg/raster.hpp"

#include <vector>

namespace hyscdg {

/// Closed ring; the closing vertex is implicit (a repeated first vertex is dropped on normalize).
using Ring = std::vector<Point>;

/// Outer ring followed by holes. Inside-ness uses the even-odd rule over all rings.
struct Polygon {
    std::vector<Ring> rings;
    friend bool operator==(const Polygon&, const Polygon&) = default;
};

/// Drops a repeated closing vertex and consecutive duplicate vertices.
[[nodiscard]] Ring normalize_ring(Ring ring);

/// Throws GeometryError when a ring has fewer than three distinct vertices or crosses itself.
void validate_polygon(const Polygon& polygon);

[[nodiscard]] double ring_signed_area(const Ring& ring) noexcept;
/// |outer| minus the sum of |holes|.
[[nodiscard]] double polygon_area(const Polygon& polygon) noexcept;
[[nodiscard]] Rect bounding_box(const Polygon& polygon) noexcept;

/// Crossing-number test, even-odd over all rings.
[[nodiscard]] bool point_in_polygon(const Polygon& polygon, Point p) noexcept;

/// Closed intersection between a polygon's area and a rectangle.
[[nodiscard]] bool polygon_intersects_rect(const Polygon& polygon, const Rect& rect) noexcept;

/// Pixel is set iff its center is inside the polygon (even-odd rule).
/// Throws GeometryError for self-intersecting rings.
[[nodiscard]] BitMask rasterize_polygon(const Polygon& polygon, const GeoRef& geo, int width,
                                        int height);

} // namespace hyscdg
