#include "hyscdg/geometry.hpp"
#include "hyscdg/rng.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

using namespace hyscdg;

namespace {

/// Star-shaped simple polygon around (cx, cy).
Ring star(CounterRng& rng, double cx, double cy, double r_min, double r_max, int n) {
    // Jittered angles keep every gap below pi, so the ring is simple.
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back((i + 0.4 * rng.uniform01()) * 2.0 * std::numbers::pi / n);
    Ring ring;
    for (const double a : angles) {
        const double r = r_min + rng.uniform01() * (r_max - r_min);
        ring.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
    }
    return ring;
}

/// Winding number by summing signed vertex angles seen from p.
int winding_oracle(const Ring& ring, Point p) {
    double total = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point a = ring[i], b = ring[(i + 1) % ring.size()];
        const double a1 = std::atan2(a.y - p.y, a.x - p.x);
        const double a2 = std::atan2(b.y - p.y, b.x - p.x);
        double d = a2 - a1;
        while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
        while (d < -std::numbers::pi) d += 2 * std::numbers::pi;
        total += d;
    }
    return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

} // namespace

TEST(PointInPolygon, MatchesWindingNumberOnRandomStars) {
    CounterRng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const Ring ring = star(rng, 0, 0, 1.0, 5.0, 3 + static_cast<int>(rng.below(10)));
        const Polygon poly{{ring}};
        for (int q = 0; q < 200; ++q) {
            const Point p{rng.uniform01() * 12 - 6, rng.uniform01() * 12 - 6};
            EXPECT_EQ(point_in_polygon(poly, p), winding_oracle(ring, p) != 0);
        }
    }
}

TEST(PointInPolygon, HoleIsOutside) {
    const Polygon donut{{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}, {{3, 3}, {7, 3}, {7, 7}, {3, 7}}}};
    EXPECT_TRUE(point_in_polygon(donut, {1, 1}));
    EXPECT_FALSE(point_in_polygon(donut, {5, 5}));
    EXPECT_FALSE(point_in_polygon(donut, {11, 5}));
    EXPECT_DOUBLE_EQ(polygon_area(donut), 100.0 - 16.0);
}

TEST(Geometry, AreaAndBoundingBox) {
    const Ring tri{{0, 0}, {4, 0}, {0, 3}};
    EXPECT_DOUBLE_EQ(ring_signed_area(tri), 6.0);
    Ring cw(tri.rbegin(), tri.rend());
    EXPECT_DOUBLE_EQ(ring_signed_area(cw), -6.0);
    const Rect b = bounding_box(Polygon{{tri}});
    EXPECT_EQ(b, (Rect{0, 0, 4, 3}));
}

TEST(Geometry, NormalizeDropsClosingAndDuplicateVertices) {
    const Ring r = normalize_ring({{0, 0}, {1, 0}, {1, 0}, {1, 1}, {0, 0}});
    EXPECT_EQ(r, (Ring{{0, 0}, {1, 0}, {1, 1}}));
}

TEST(Geometry, ValidateRejectsDegenerateAndSelfIntersecting) {
    EXPECT_THROW(validate_polygon(Polygon{{{{0, 0}, {1, 1}}}}), GeometryError);
    // bow tie
    EXPECT_THROW(validate_polygon(Polygon{{{{0, 0}, {2, 2}, {2, 0}, {0, 2}}}}), GeometryError);
    EXPECT_NO_THROW(validate_polygon(Polygon{{{{0, 0}, {2, 0}, {2, 2}, {0, 2}}}}));
}

TEST(Rasterize, MatchesCenterSamplingOracle) {
    CounterRng rng(8);
    const GeoRef geo{1000.0, 2000.0, 0.5};
    for (int trial = 0; trial < 60; ++trial) {
        const Ring ring = star(rng, 1008.0, 1992.0, 1.0, 7.0, 3 + static_cast<int>(rng.below(12)));
        const Polygon poly{{ring}};
        const BitMask m = rasterize_polygon(poly, geo, 32, 32);
        for (int y = 0; y < 32; ++y) {
            for (int x = 0; x < 32; ++x) {
                const Point c = geo.pixel_center(x, y);
                ASSERT_EQ(m.test(x, y), winding_oracle(ring, c) != 0) << "pixel " << x << "," << y;
            }
        }
    }
}

TEST(Rasterize, PolygonOutsideTileIsEmptyAndClipped) {
    const GeoRef geo{0.0, 10.0, 1.0};
    const Polygon far{{{{100, 100}, {110, 100}, {110, 110}}}};
    EXPECT_FALSE(rasterize_polygon(far, geo, 10, 10).any());
    const Polygon huge{{{{-1e9, -1e9}, {1e9, -1e9}, {1e9, 1e9}, {-1e9, 1e9}}}};
    EXPECT_EQ(rasterize_polygon(huge, geo, 10, 10).count(), 100u);
}

TEST(Rasterize, SelfIntersectionThrows) {
    const GeoRef geo{0.0, 10.0, 1.0};
    EXPECT_THROW((void)rasterize_polygon(Polygon{{{{0, 0}, {8, 8}, {8, 0}, {0, 8}}}}, geo, 10, 10), GeometryError);
}

TEST(PolygonIntersectsRect, ContainmentTouchAndMiss) {
    const Polygon sq{{{{0, 0}, {4, 0}, {4, 4}, {0, 4}}}};
    EXPECT_TRUE(polygon_intersects_rect(sq, {1, 1, 2, 2}));   // rect inside
    EXPECT_TRUE(polygon_intersects_rect(sq, {-5, -5, 10, 10})); // polygon inside
    EXPECT_TRUE(polygon_intersects_rect(sq, {4, 0, 6, 2}));   // touching edge
    EXPECT_FALSE(polygon_intersects_rect(sq, {4.5, 0, 6, 2}));
    const Polygon tri{{{{0, 0}, {4, 0}, {0, 4}}}};
    EXPECT_FALSE(polygon_intersects_rect(tri, {3, 3, 5, 5})); // inside the bbox, outside the triangle
}
