#include "hyscdg/raster_io.hpp"

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

#include <png.h>
#include <tiffio.h>

namespace hyscdg {
namespace fs = std::filesystem;

namespace {

constexpr ttag_t kModelPixelScaleTag = 33550;
constexpr ttag_t kModelTiepointTag = 33922;
constexpr ttag_t kGeoKeyDirectoryTag = 34735;

TIFFExtendProc g_parent_extender = nullptr;

const TIFFFieldInfo kGeoFieldInfo[] = {
    {kModelPixelScaleTag, TIFF_VARIABLE, TIFF_VARIABLE, TIFF_DOUBLE, FIELD_CUSTOM, 1, 1,
     const_cast<char*>("ModelPixelScaleTag")},
    {kModelTiepointTag, TIFF_VARIABLE, TIFF_VARIABLE, TIFF_DOUBLE, FIELD_CUSTOM, 1, 1,
     const_cast<char*>("ModelTiepointTag")},
    {kGeoKeyDirectoryTag, TIFF_VARIABLE, TIFF_VARIABLE, TIFF_SHORT, FIELD_CUSTOM, 1, 1,
     const_cast<char*>("GeoKeyDirectoryTag")},
};

void geotiff_tag_extender(TIFF* tif) {
    TIFFMergeFieldInfo(tif, kGeoFieldInfo, sizeof(kGeoFieldInfo) / sizeof(kGeoFieldInfo[0]));
    if (g_parent_extender) g_parent_extender(tif);
}

thread_local std::string g_tiff_error;

void tiff_error_handler(const char* module, const char* fmt, va_list ap) {
    char buf[512];
    std::vsnprintf(buf, sizeof(buf), fmt, ap);
    g_tiff_error = std::string(module ? module : "libtiff") + ": " + buf;
}

void tiff_warning_handler(const char*, const char*, va_list) {}

void install_tiff_hooks() {
    static std::once_flag once;
    std::call_once(once, [] {
        g_parent_extender = TIFFSetTagExtender(geotiff_tag_extender);
        TIFFSetErrorHandler(tiff_error_handler);
        TIFFSetWarningHandler(tiff_warning_handler);
    });
}

struct TiffCloser {
    void operator()(TIFF* t) const noexcept { TIFFClose(t); }
};
using TiffPtr = std::unique_ptr<TIFF, TiffCloser>;

std::uint16_t epsg_code(const std::string& crs) {
    const auto colon = crs.find(':');
    try {
        return static_cast<std::uint16_t>(std::stoi(colon == std::string::npos ? crs : crs.substr(colon + 1)));
    } catch (const std::exception&) {
        return 32767; // user-defined
    }
}

struct FileCloser {
    void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw IoError("cannot open " + path.string());
    return f;
}

// libpng reports errors by longjmp; these helpers keep only trivially destructible
// objects alive across setjmp.
bool png_write_rows(std::FILE* fp, int width, int height, int bit_depth, int color_type,
                    const std::uint8_t* data, std::size_t row_bytes) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 bit_depth, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < height; ++y) {
        png_write_row(png, const_cast<png_bytep>(data + static_cast<std::size_t>(y) * row_bytes));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

struct PngHeader {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int bit_depth = 0;
    int color_type = 0;
};

// Two-phase read: header first so the caller can size the buffer.
bool png_read_all(std::FILE* fp, PngHeader* header, std::vector<std::uint8_t>* out) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return false;
    }
    png_init_io(png, fp);
    png_read_info(png, info);
    header->width = png_get_image_width(png, info);
    header->height = png_get_image_height(png, info);
    header->bit_depth = png_get_bit_depth(png, info);
    header->color_type = png_get_color_type(png, info);
    const std::size_t row_bytes = png_get_rowbytes(png, info);
    out->resize(row_bytes * header->height);
    for (png_uint_32 y = 0; y < header->height; ++y) {
        png_read_row(png, out->data() + y * row_bytes, nullptr);
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return true;
}

void write_png_bytes(const fs::path& path, int width, int height, int bit_depth, int color_type,
                     const std::vector<std::uint8_t>& data, std::size_t row_bytes) {
    auto fp = open_file(path, "wb");
    if (!png_write_rows(fp.get(), width, height, bit_depth, color_type, data.data(), row_bytes)) {
        throw IoError("PNG encoding failed for " + path.string());
    }
}

std::pair<PngHeader, std::vector<std::uint8_t>> read_png_bytes(const fs::path& path) {
    auto fp = open_file(path, "rb");
    PngHeader header;
    std::vector<std::uint8_t> data;
    if (!png_read_all(fp.get(), &header, &data)) throw IoError("PNG decoding failed for " + path.string());
    return {header, std::move(data)};
}

} // namespace

nlohmann::json to_json(const TileMeta& meta) {
    return {{"tile_id", meta.tile_id},
            {"gsd", meta.geo.gsd},
            {"origin", {meta.geo.origin_x, meta.geo.origin_y}},
            {"crs", meta.geo.crs},
            {"band_scaling", {{"elevation", {{"min", meta.elevation_min}, {"max", meta.elevation_max}}}}},
            {"place", {{"locality", meta.locality}, {"region", meta.region}}},
            {"acquired", meta.acquired}};
}

TileMeta tile_meta_from_json(const nlohmann::json& j) {
    try {
        TileMeta m;
        m.tile_id = j.at("tile_id").get<std::string>();
        m.geo.gsd = j.at("gsd").get<double>();
        const auto origin = j.at("origin").get<std::vector<double>>();
        if (origin.size() != 2) throw FormatError("meta.json origin must have two coordinates");
        m.geo.origin_x = origin[0];
        m.geo.origin_y = origin[1];
        m.geo.crs = j.value("crs", std::string("EPSG:2154"));
        if (j.contains("band_scaling") && j["band_scaling"].contains("elevation")) {
            m.elevation_min = j["band_scaling"]["elevation"].value("min", 0.0);
            m.elevation_max = j["band_scaling"]["elevation"].value("max", 0.0);
        }
        if (j.contains("place")) {
            m.locality = j["place"].value("locality", std::string());
            m.region = j["place"].value("region", std::string());
        }
        m.acquired = j.value("acquired", std::string());
        if (!(m.geo.gsd > 0.0)) throw FormatError("meta.json gsd must be positive");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed tile metadata: ") + e.what());
    }
}

void write_geotiff(const fs::path& path, const RasterTile& tile) {
    install_tiff_hooks();
    g_tiff_error.clear();
    TiffPtr tif(TIFFOpen(path.c_str(), "w"));
    if (!tif) throw IoError("cannot create " + path.string() + ": " + g_tiff_error);
    TIFF* t = tif.get();
    TIFFSetField(t, TIFFTAG_IMAGEWIDTH, static_cast<std::uint32_t>(tile.width()));
    TIFFSetField(t, TIFFTAG_IMAGELENGTH, static_cast<std::uint32_t>(tile.height()));
    TIFFSetField(t, TIFFTAG_SAMPLESPERPIXEL, static_cast<std::uint16_t>(kBandCount));
    TIFFSetField(t, TIFFTAG_BITSPERSAMPLE, static_cast<std::uint16_t>(8));
    TIFFSetField(t, TIFFTAG_SAMPLEFORMAT, SAMPLEFORMAT_UINT);
    TIFFSetField(t, TIFFTAG_PLANARCONFIG, PLANARCONFIG_SEPARATE);
    TIFFSetField(t, TIFFTAG_PHOTOMETRIC, PHOTOMETRIC_MINISBLACK);
    const std::uint16_t extra[kBandCount - 1] = {EXTRASAMPLE_UNSPECIFIED, EXTRASAMPLE_UNSPECIFIED,
                                                 EXTRASAMPLE_UNSPECIFIED, EXTRASAMPLE_UNSPECIFIED};
    TIFFSetField(t, TIFFTAG_EXTRASAMPLES, static_cast<std::uint16_t>(kBandCount - 1), extra);
    TIFFSetField(t, TIFFTAG_COMPRESSION, COMPRESSION_NONE);
    TIFFSetField(t, TIFFTAG_ROWSPERSTRIP, static_cast<std::uint32_t>(tile.height()));

    const GeoRef& g = tile.geo();
    double scale[3] = {g.gsd, g.gsd, 0.0};
    double tiepoint[6] = {0.0, 0.0, 0.0, g.origin_x, g.origin_y, 0.0};
    std::uint16_t keys[16] = {1, 1, 0, 3,                       // version, revision, key count
                              1024, 0, 1, 1,                    // GTModelType = projected
                              1025, 0, 1, 1,                    // GTRasterType = PixelIsArea
                              3072, 0, 1, epsg_code(g.crs)};    // ProjectedCSType
    TIFFSetField(t, kModelPixelScaleTag, 3, scale);
    TIFFSetField(t, kModelTiepointTag, 6, tiepoint);
    TIFFSetField(t, kGeoKeyDirectoryTag, 16, keys);

    std::vector<std::uint8_t> row(static_cast<std::size_t>(tile.width()));
    for (int b = 0; b < kBandCount; ++b) {
        const auto plane = tile.band(b);
        for (int y = 0; y < tile.height(); ++y) {
            std::memcpy(row.data(), plane.data() + static_cast<std::size_t>(y) * tile.width(), row.size());
            if (TIFFWriteScanline(t, row.data(), static_cast<std::uint32_t>(y), static_cast<std::uint16_t>(b)) < 0) {
                throw IoError("TIFF write failed for " + path.string() + ": " + g_tiff_error);
            }
        }
    }
}

RasterTile read_geotiff(const fs::path& path, const std::string& tile_id) {
    install_tiff_hooks();
    g_tiff_error.clear();
    TiffPtr tif(TIFFOpen(path.c_str(), "r"));
    if (!tif) throw IoError("cannot open " + path.string() + ": " + g_tiff_error);
    TIFF* t = tif.get();
    std::uint32_t width = 0, height = 0;
    std::uint16_t spp = 0, bps = 0, planar = PLANARCONFIG_CONTIG;
    TIFFGetField(t, TIFFTAG_IMAGEWIDTH, &width);
    TIFFGetField(t, TIFFTAG_IMAGELENGTH, &height);
    TIFFGetFieldDefaulted(t, TIFFTAG_SAMPLESPERPIXEL, &spp);
    TIFFGetFieldDefaulted(t, TIFFTAG_BITSPERSAMPLE, &bps);
    TIFFGetFieldDefaulted(t, TIFFTAG_PLANARCONFIG, &planar);
    if (spp != kBandCount || bps != 8) {
        throw FormatError(path.string() + ": expected 5 bands of 8 bits, got " + std::to_string(spp) +
                          " x " + std::to_string(bps));
    }

    GeoRef geo;
    std::uint16_t count = 0;
    double* values = nullptr;
    if (TIFFGetField(t, kModelPixelScaleTag, &count, &values) && count >= 2) geo.gsd = values[0];
    if (TIFFGetField(t, kModelTiepointTag, &count, &values) && count >= 6) {
        geo.origin_x = values[3] - values[0] * geo.gsd;
        geo.origin_y = values[4] + values[1] * geo.gsd;
    }
    std::uint16_t* keys = nullptr;
    if (TIFFGetField(t, kGeoKeyDirectoryTag, &count, &keys) && count >= 4) {
        for (std::uint16_t k = 0; k < keys[3] && 4 + 4 * k + 3 < count; ++k) {
            const std::uint16_t* key = keys + 4 + 4 * k;
            if (key[0] == 3072 && key[1] == 0) geo.crs = "EPSG:" + std::to_string(key[3]);
        }
    }

    RasterTile tile(tile_id, static_cast<int>(width), static_cast<int>(height), geo);
    std::vector<std::uint8_t> row(static_cast<std::size_t>(TIFFScanlineSize(t)));
    if (planar == PLANARCONFIG_SEPARATE) {
        for (int b = 0; b < kBandCount; ++b) {
            auto plane = tile.band(b);
            for (std::uint32_t y = 0; y < height; ++y) {
                if (TIFFReadScanline(t, row.data(), y, static_cast<std::uint16_t>(b)) < 0) {
                    throw IoError("TIFF read failed for " + path.string() + ": " + g_tiff_error);
                }
                std::memcpy(plane.data() + static_cast<std::size_t>(y) * width, row.data(), width);
            }
        }
    } else {
        for (std::uint32_t y = 0; y < height; ++y) {
            if (TIFFReadScanline(t, row.data(), y, 0) < 0) {
                throw IoError("TIFF read failed for " + path.string() + ": " + g_tiff_error);
            }
            for (std::uint32_t x = 0; x < width; ++x) {
                for (int b = 0; b < kBandCount; ++b) {
                    tile.band(b)[static_cast<std::size_t>(y) * width + x] = row[x * kBandCount + b];
                }
            }
        }
    }
    return tile;
}

void write_png8(const fs::path& path, const Grid<std::uint8_t>& gray) {
    write_png_bytes(path, gray.width(), gray.height(), 8, PNG_COLOR_TYPE_GRAY, gray.storage(),
                    static_cast<std::size_t>(gray.width()));
}

void write_png16(const fs::path& path, const Grid<std::uint16_t>& gray) {
    std::vector<std::uint8_t> bytes(gray.size() * 2);
    for (std::size_t i = 0; i < gray.size(); ++i) {
        bytes[2 * i] = static_cast<std::uint8_t>(gray[i] >> 8);
        bytes[2 * i + 1] = static_cast<std::uint8_t>(gray[i] & 0xFF);
    }
    write_png_bytes(path, gray.width(), gray.height(), 16, PNG_COLOR_TYPE_GRAY, bytes,
                    static_cast<std::size_t>(gray.width()) * 2);
}

void write_png_rgb(const fs::path& path, const RgbImage& image) {
    write_png_bytes(path, image.width, image.height, 8, PNG_COLOR_TYPE_RGB, image.pixels,
                    static_cast<std::size_t>(image.width) * 3);
}

Grid<std::uint8_t> read_png8(const fs::path& path) {
    auto [header, data] = read_png_bytes(path);
    if (header.bit_depth != 8 || header.color_type != PNG_COLOR_TYPE_GRAY) {
        throw FormatError(path.string() + ": expected 8-bit single-channel PNG");
    }
    Grid<std::uint8_t> out(static_cast<int>(header.width), static_cast<int>(header.height));
    out.storage() = std::move(data);
    return out;
}

Grid<std::uint16_t> read_png16(const fs::path& path) {
    auto [header, data] = read_png_bytes(path);
    if (header.bit_depth != 16 || header.color_type != PNG_COLOR_TYPE_GRAY) {
        throw FormatError(path.string() + ": expected 16-bit single-channel PNG");
    }
    Grid<std::uint16_t> out(static_cast<int>(header.width), static_cast<int>(header.height));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint16_t>((data[2 * i] << 8) | data[2 * i + 1]);
    }
    return out;
}

SemanticMap read_semantic(const fs::path& path) { return SemanticMap(read_png8(path)); }
ChangeMap read_change(const fs::path& path) { return ChangeMap(read_png16(path)); }
void write_semantic(const fs::path& path, const SemanticMap& map) { write_png8(path, map); }
void write_change(const fs::path& path, const ChangeMap& map) { write_png16(path, map); }
void write_soft_mask(const fs::path& path, const SoftMask& mask) { write_png8(path, quantize(mask)); }

void write_bit_mask(const fs::path& path, const BitMask& mask) {
    Grid<std::uint8_t> g(mask.width(), mask.height());
    for (std::size_t i = 0; i < mask.size(); ++i) g[i] = mask[i] ? 255 : 0;
    write_png8(path, g);
}

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_json(const fs::path& path, const nlohmann::json& j) { write_text(path, j.dump(2) + "\n"); }

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("write failed for " + path.string());
}

TileBundle load_tile_dir(const fs::path& dir) {
    TileBundle b;
    b.meta = tile_meta_from_json(read_json(dir / "meta.json"));
    b.image = read_geotiff(dir / "image.tif", b.meta.tile_id);
    b.image.elevation_min = b.meta.elevation_min;
    b.image.elevation_max = b.meta.elevation_max;
    b.semantic = read_semantic(dir / "semantic.png");
    if (!b.semantic.same_shape(b.image)) {
        throw FormatError(dir.string() + ": semantic map and image dimensions differ");
    }
    if (fs::exists(dir / "change.png")) {
        b.change = read_change(dir / "change.png");
        if (!b.change->same_shape(b.image)) {
            throw FormatError(dir.string() + ": change map and image dimensions differ");
        }
    }
    return b;
}

void save_tile_dir(const fs::path& dir, const TileBundle& bundle) {
    fs::create_directories(dir);
    write_geotiff(dir / "image.tif", bundle.image);
    write_semantic(dir / "semantic.png", bundle.semantic);
    if (bundle.change) write_change(dir / "change.png", *bundle.change);
    write_json(dir / "meta.json", to_json(bundle.meta));
}

} // namespace hyscdg
