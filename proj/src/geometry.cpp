#include "hyscdg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyscdg {
namespace {

double cross(Point o, Point a, Point b) noexcept {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

bool on_segment(Point a, Point b, Point p) noexcept {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

// Closed segment intersection, collinear overlap included.
bool segments_intersect(Point a, Point b, Point c, Point d) noexcept {
    const int d1 = sign(cross(c, d, a));
    const int d2 = sign(cross(c, d, b));
    const int d3 = sign(cross(a, b, c));
    const int d4 = sign(cross(a, b, d));
    if (d1 * d2 < 0 && d3 * d4 < 0) return true;
    if (d1 == 0 && on_segment(c, d, a)) return true;
    if (d2 == 0 && on_segment(c, d, b)) return true;
    if (d3 == 0 && on_segment(a, b, c)) return true;
    if (d4 == 0 && on_segment(a, b, d)) return true;
    return false;
}

void validate_ring(const Ring& ring) {
    const std::size_t n = ring.size();
    if (n < 3) throw GeometryError("ring has fewer than three distinct vertices");
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = ring[i];
        const Point b = ring[(i + 1) % n];
        const Point c = ring[(i + 2) % n];
        // Adjacent edges folding back onto each other.
        if (cross(a, b, c) == 0.0) {
            const double dot = (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y);
            if (dot < 0.0) throw GeometryError("ring folds back on itself");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_intersect(ring[i], ring[(i + 1) % n], ring[j], ring[(j + 1) % n])) {
                throw GeometryError("self-intersecting ring");
            }
        }
    }
}

} // namespace

Ring normalize_ring(Ring ring) {
    Ring out;
    out.reserve(ring.size());
    for (const auto& p : ring) {
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    }
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
}

void validate_polygon(const Polygon& polygon) {
    if (polygon.rings.empty()) throw GeometryError("polygon has no rings");
    for (const auto& ring : polygon.rings) validate_ring(ring);
}

double ring_signed_area(const Ring& ring) noexcept {
    double twice = 0.0;
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = ring[i];
        const Point b = ring[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

double polygon_area(const Polygon& polygon) noexcept {
    if (polygon.rings.empty()) return 0.0;
    double area = std::abs(ring_signed_area(polygon.rings.front()));
    for (std::size_t r = 1; r < polygon.rings.size(); ++r) {
        area -= std::abs(ring_signed_area(polygon.rings[r]));
    }
    return area;
}

Rect bounding_box(const Polygon& polygon) noexcept {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Rect r{inf, inf, -inf, -inf};
    for (const auto& ring : polygon.rings) {
        for (const auto& p : ring) {
            r.min_x = std::min(r.min_x, p.x);
            r.min_y = std::min(r.min_y, p.y);
            r.max_x = std::max(r.max_x, p.x);
            r.max_y = std::max(r.max_y, p.y);
        }
    }
    return r;
}

bool point_in_polygon(const Polygon& polygon, Point p) noexcept {
    bool inside = false;
    for (const auto& ring : polygon.rings) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
            const Point a = ring[j];
            const Point b = ring[i];
            if ((a.y > p.y) != (b.y > p.y)) {
                const double xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < xint) inside = !inside;
            }
        }
    }
    return inside;
}

bool polygon_intersects_rect(const Polygon& polygon, const Rect& rect) noexcept {
    if (polygon.rings.empty() || !bounding_box(polygon).intersects(rect)) return false;
    for (const auto& ring : polygon.rings) {
        for (const auto& p : ring) {
            if (rect.contains(p)) return true;
        }
    }
    const Point corners[4] = {{rect.min_x, rect.min_y},
                              {rect.max_x, rect.min_y},
                              {rect.max_x, rect.max_y},
                              {rect.min_x, rect.max_y}};
    for (const auto& c : corners) {
        if (point_in_polygon(polygon, c)) return true;
    }
    for (const auto& ring : polygon.rings) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (int k = 0; k < 4; ++k) {
                if (segments_intersect(ring[i], ring[(i + 1) % n], corners[k], corners[(k + 1) % 4])) {
                    return true;
                }
            }
        }
    }
    return false;
}

BitMask rasterize_polygon(const Polygon& polygon, const GeoRef& geo, int width, int height) {
    validate_polygon(polygon);
    BitMask mask(width, height);
    const Rect box = bounding_box(polygon);
    std::vector<double> xs;
    for (int row = 0; row < height; ++row) {
        const double py = geo.origin_y - (row + 0.5) * geo.gsd;
        if (py < box.min_y || py > box.max_y) continue;
        xs.clear();
        for (const auto& ring : polygon.rings) {
            const std::size_t n = ring.size();
            for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
                const Point a = ring[j];
                const Point b = ring[i];
                if ((a.y > py) != (b.y > py)) {
                    xs.push_back(a.x + (py - a.y) * (b.x - a.x) / (b.y - a.y));
                }
            }
        }
        std::sort(xs.begin(), xs.end());
        // Pixel centers in [xs[2k], xs[2k+1]) have an odd crossing count to their right.
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            const double lo = xs[k];
            const double hi = xs[k + 1];
            const double f0 = std::floor((lo - geo.origin_x) / geo.gsd - 0.5) - 1.0;
            const double f1 = std::ceil((hi - geo.origin_x) / geo.gsd - 0.5) + 1.0;
            const int c0 = static_cast<int>(std::clamp(f0, 0.0, static_cast<double>(width)));
            const int c1 = static_cast<int>(std::clamp(f1, -1.0, static_cast<double>(width - 1)));
            for (int col = c0; col <= c1; ++col) {
                const double px = geo.origin_x + (col + 0.5) * geo.gsd;
                if (px >= lo && px < hi) mask.set(col, row);
            }
        }
    }
    return mask;
}

} // namespace hyscdg
