#include "hyscdg/raster_io.hpp"
#include "hyscdg/rng.hpp"

#include "support/temp_dir.hpp"

#include <fstream>

#include <gtest/gtest.h>

using namespace hyscdg;
using hyscdg::testing::TempDir;

namespace {

RasterTile random_tile(int w, int h, std::uint64_t seed) {
    RasterTile t("tile", w, h, GeoRef{652000.5, 6862000.25, 0.2});
    CounterRng rng(seed);
    for (auto& v : t.pixels()) v = static_cast<std::uint8_t>(rng() & 0xFF);
    return t;
}

} // namespace

TEST(GeoTiff, RoundTripsPixelsAndGeoreference) {
    TempDir dir("io");
    const RasterTile t = random_tile(37, 21, 1);
    write_geotiff(dir / "a.tif", t);
    const RasterTile back = read_geotiff(dir / "a.tif", "tile");
    EXPECT_EQ(back.width(), 37);
    EXPECT_EQ(back.height(), 21);
    EXPECT_EQ(back.pixels(), t.pixels());
    EXPECT_DOUBLE_EQ(back.geo().origin_x, 652000.5);
    EXPECT_DOUBLE_EQ(back.geo().origin_y, 6862000.25);
    EXPECT_DOUBLE_EQ(back.geo().gsd, 0.2);
}

TEST(GeoTiff, WritesAreByteStable) {
    TempDir dir("io");
    const RasterTile t = random_tile(16, 16, 2);
    write_geotiff(dir / "a.tif", t);
    write_geotiff(dir / "b.tif", t);
    std::ifstream a(dir / "a.tif", std::ios::binary), b(dir / "b.tif", std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
    EXPECT_EQ(sa, sb);
}

TEST(GeoTiff, MissingFileIsIoError) {
    TempDir dir("io");
    EXPECT_THROW((void)read_geotiff(dir / "nope.tif"), IoError);
}

TEST(Png, EightAndSixteenBitRoundTrip) {
    TempDir dir("io");
    CounterRng rng(3);
    SemanticMap s(19, 7);
    for (auto& v : s.storage()) v = static_cast<ClassId>(rng.below(16));
    write_semantic(dir / "s.png", s);
    EXPECT_EQ(read_semantic(dir / "s.png"), s);

    ChangeMap c(19, 7);
    for (auto& v : c.storage()) v = static_cast<std::uint16_t>(rng.below(257));
    c[0] = 65535;
    write_change(dir / "c.png", c);
    EXPECT_EQ(read_change(dir / "c.png"), c);
}

TEST(Png, ReadingTheWrongDepthFails) {
    TempDir dir("io");
    write_change(dir / "c.png", ChangeMap(4, 4));
    EXPECT_THROW((void)read_semantic(dir / "c.png"), FormatError);
}

TEST(Png, SoftMaskQuantizesHalfUp) {
    TempDir dir("io");
    SoftMask m(3, 1);
    m[0] = 0.0;
    m[1] = 0.5;
    m[2] = 1.0;
    write_soft_mask(dir / "m.png", m);
    const auto g = read_png8(dir / "m.png");
    EXPECT_EQ(g[0], 0);
    EXPECT_EQ(g[1], 128);
    EXPECT_EQ(g[2], 255);
}

TEST(TileMeta, JsonRoundTrip) {
    TileMeta m;
    m.tile_id = "D033-2018_UU_11";
    m.geo = {1.5, 2.5, 0.2, "EPSG:2154"};
    m.elevation_min = -3.0;
    m.elevation_max = 812.5;
    m.locality = "Saint-Jory";
    m.region = "Occitanie";
    m.acquired = "2018-07-02T10:11:00";
    EXPECT_EQ(tile_meta_from_json(to_json(m)), m);
}

TEST(TileMeta, RejectsMissingFields) {
    EXPECT_THROW((void)tile_meta_from_json({{"tile_id", "x"}}), FormatError);
    EXPECT_THROW((void)tile_meta_from_json({{"tile_id", "x"}, {"gsd", 0.0}, {"origin", {0, 0}}}), FormatError);
}

TEST(TileDir, SaveLoadRoundTrip) {
    TempDir dir("io");
    TileBundle b;
    b.meta.tile_id = "tile";
    b.meta.geo = {652000.5, 6862000.25, 0.2};
    b.image = random_tile(8, 6, 4);
    b.semantic = SemanticMap(8, 6, 3);
    b.change = ChangeMap(8, 6);
    (*b.change)[5] = 17;
    save_tile_dir(dir / "tile", b);
    const TileBundle back = load_tile_dir(dir / "tile");
    EXPECT_EQ(back.meta, b.meta);
    EXPECT_EQ(back.image.pixels(), b.image.pixels());
    EXPECT_EQ(back.semantic, b.semantic);
    ASSERT_TRUE(back.change.has_value());
    EXPECT_EQ(*back.change, *b.change);
}

TEST(TileDir, DimensionMismatchIsFormatError) {
    TempDir dir("io");
    TileBundle b;
    b.meta.tile_id = "tile";
    b.image = random_tile(8, 6, 4);
    b.semantic = SemanticMap(8, 5);
    save_tile_dir(dir / "tile", b);
    EXPECT_THROW((void)load_tile_dir(dir / "tile"), FormatError);
}

TEST(Json, WriteIsPrettyWithTrailingNewline) {
    TempDir dir("io");
    write_json(dir / "a.json", {{"b", 1}, {"a", 2}});
    std::ifstream in(dir / "a.json");
    const std::string s((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(s, "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
    EXPECT_EQ(read_json(dir / "a.json")["b"], 1);
}
