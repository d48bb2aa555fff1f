#include "hyscdg/raster.hpp"
#include "hyscdg/rle.hpp"
#include "hyscdg/rng.hpp"

#include <gtest/gtest.h>

using namespace hyscdg;

TEST(Grid, RowMajorIndexing) {
    Grid<int> g(3, 2);
    g(2, 1) = 7;
    EXPECT_EQ(g[5], 7);
    EXPECT_TRUE(g.contains(2, 1));
    EXPECT_FALSE(g.contains(3, 0));
    EXPECT_FALSE(g.contains(0, -1));
}

TEST(Grid, RejectsNegativeSize) {
    EXPECT_EQ(Grid<int>(0, 4).size(), 0u);
    EXPECT_THROW(Grid<int>(4, -1), Error);
}

TEST(BitMask, SetAlgebra) {
    BitMask a(4, 4), b(4, 4);
    a.set(0, 0);
    a.set(1, 1);
    b.set(1, 1);
    EXPECT_TRUE(b.subset_of(a));
    EXPECT_FALSE(a.subset_of(b));
    BitMask u = a;
    u |= b;
    EXPECT_EQ(u.count(), 2u);
    BitMask i = a;
    i &= b;
    EXPECT_EQ(i.count(), 1u);
}

TEST(QuantizeWeight, HalfUpAndClamped) {
    EXPECT_EQ(quantize_weight(0.0), 0);
    EXPECT_EQ(quantize_weight(1.0), 255);
    EXPECT_EQ(quantize_weight(0.5), 128); // 127.5 rounds up
    EXPECT_EQ(quantize_weight(-0.1), 0);
    EXPECT_EQ(quantize_weight(1.7), 255);
    for (int v = 0; v <= 255; ++v) EXPECT_EQ(quantize_weight(v / 255.0), v);
}

TEST(SemanticMap, CheckLabelsNamesThePixel) {
    SemanticMap m(4, 3, 1);
    m(2, 1) = 9;
    try {
        m.check_labels(5);
        FAIL() << "expected LabelError";
    } catch (const LabelError& e) {
        EXPECT_NE(std::string(e.what()).find("(2, 1)"), std::string::npos) << e.what();
    }
    EXPECT_NO_THROW(m.check_labels(10));
}

TEST(ChangeMap, EncodeDecodeIsABijection) {
    for (int k : {2, 3, 16, 255}) {
        for (int a = 0; a < k; a += std::max(1, k / 7)) {
            for (int b = 0; b < k; b += std::max(1, k / 5)) {
                const auto code = ChangeMap::encode(static_cast<ClassId>(a), static_cast<ClassId>(b), k);
                EXPECT_EQ(code, a * k + b + 1);
                const auto [x, y] = ChangeMap::decode(code, k);
                EXPECT_EQ(x, a);
                EXPECT_EQ(y, b);
            }
        }
    }
}

TEST(ChangeMap, BetweenMarksExactlyTheDifferingPixels) {
    CounterRng rng(3);
    SemanticMap a(17, 9), b(17, 9);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = static_cast<ClassId>(rng.below(4));
        b[i] = rng.below(3) == 0 ? static_cast<ClassId>(rng.below(4)) : a[i];
    }
    const ChangeMap c = ChangeMap::between(a, b, 4);
    std::size_t differ = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) {
            EXPECT_EQ(c[i], 0);
        } else {
            ++differ;
            EXPECT_EQ(c[i], a[i] * 4 + b[i] + 1);
        }
    }
    EXPECT_EQ(c.changed_pixels(), differ);
    EXPECT_EQ(c.binary().count(), differ);
}

TEST(ChangeMap, BetweenRejectsShapeMismatch) {
    EXPECT_THROW((void)ChangeMap::between(SemanticMap(3, 3), SemanticMap(3, 4), 2), Error);
}

TEST(RasterTile, BandSequentialLayout) {
    RasterTile t("t", 3, 2, GeoRef{});
    EXPECT_EQ(t.pixels().size(), 30u);
    t.band(Band::Nir)[4] = 9;
    EXPECT_EQ(t.pixels()[3 * 6 + 4], 9);
    EXPECT_THROW(RasterTile("t", 0, 2, GeoRef{}), Error);
    GeoRef g;
    g.gsd = 0.0;
    EXPECT_THROW(RasterTile("t", 2, 2, g), Error);
}

TEST(GeoRef, PixelCentersAndExtent) {
    GeoRef g{100.0, 200.0, 0.5};
    const Point p = g.pixel_center(0, 0);
    EXPECT_DOUBLE_EQ(p.x, 100.25);
    EXPECT_DOUBLE_EQ(p.y, 199.75);
    const Rect r = g.extent(4, 2);
    EXPECT_DOUBLE_EQ(r.min_x, 100.0);
    EXPECT_DOUBLE_EQ(r.max_x, 102.0);
    EXPECT_DOUBLE_EQ(r.min_y, 199.0);
    EXPECT_DOUBLE_EQ(r.max_y, 200.0);
}

TEST(Rle, RoundTripsRandomMasks) {
    CounterRng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int w = 1 + static_cast<int>(rng.below(40));
        const int h = 1 + static_cast<int>(rng.below(40));
        const int density = static_cast<int>(rng.below(5));
        BitMask m(w, h);
        for (auto& v : m.storage()) v = rng.below(5) < static_cast<std::uint64_t>(density) ? 1 : 0;
        const auto runs = rle_encode(m);
        std::uint64_t total = 0;
        for (const auto r : runs) total += r;
        EXPECT_EQ(total, m.size());
        EXPECT_EQ(rle_decode(runs, w, h), m);
    }
}

TEST(Rle, StartsWithTheZeroRun) {
    BitMask m(4, 1);
    m.set(0, 0);
    const auto runs = rle_encode(m);
    ASSERT_GE(runs.size(), 2u);
    EXPECT_EQ(runs[0], 0u);
    EXPECT_EQ(runs[1], 1u);
}

TEST(Rle, DecodeRejectsWrongCoverage) {
    EXPECT_THROW((void)rle_decode({3, 2}, 4, 1), FormatError);
    EXPECT_THROW((void)rle_decode({1, 2}, 4, 1), FormatError);
}
