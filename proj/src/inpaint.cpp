#include "hyscdg/inpaint.hpp"

#include "hyscdg/rng.hpp"

#include <algorithm>
#include <chrono>

#include <sodium.h>

namespace hyscdg {

RgbImage render_condition_map(const SemanticMap& map, const ClassTable& classes) {
    map.check_labels(classes.size());
    RgbImage out{map.width(), map.height(), std::vector<std::uint8_t>(map.size() * 3)};
    for (std::size_t i = 0; i < map.size(); ++i) {
        const Rgb& c = classes[map[i]].color;
        out.pixels[3 * i] = c[0];
        out.pixels[3 * i + 1] = c[1];
        out.pixels[3 * i + 2] = c[2];
    }
    return out;
}

void validate_request(const InpaintRequest& r) {
    if (r.image.width() <= 0 || r.image.height() <= 0) throw Error("inpaint request has an empty image");
    if (r.mask.width() != r.image.width() || r.mask.height() != r.image.height()) {
        throw Error("inpaint mask dimensions differ from the image");
    }
    if (r.condition.width != r.image.width() || r.condition.height != r.image.height() ||
        r.condition.pixels.size() != r.image.plane_size() * 3) {
        throw Error("condition map dimensions differ from the image");
    }
    for (const double w : r.mask.values()) {
        if (!(w >= 0.0 && w <= 1.0)) throw Error("inpaint mask weight outside [0,1]");
    }
}

InpaintResult inpaint(InpaintBackend& backend, const InpaintRequest& request) {
    validate_request(request);
    const auto start = std::chrono::steady_clock::now();
    RasterTile out = backend.run(request);
    const auto stop = std::chrono::steady_clock::now();
    if (out.width() != request.image.width() || out.height() != request.image.height()) {
        throw Error("backend " + backend.id() + " returned an image of the wrong size");
    }
    const Grid<std::uint8_t> alpha = quantize(request.mask);
    const std::size_t plane = out.plane_size();
    for (int b = 0; b < kBandCount; ++b) {
        auto dst = out.band(b);
        const auto src = request.image.band(b);
        for (std::size_t i = 0; i < plane; ++i) {
            if (alpha[i] == 0) dst[i] = src[i];
        }
    }
    out.elevation_min = request.image.elevation_min;
    out.elevation_max = request.image.elevation_max;
    return {std::move(out), backend.id(), backend.version(),
            std::chrono::duration<double, std::milli>(stop - start).count()};
}

int texture_noise(std::uint64_t seed, std::size_t pixel, int band) noexcept {
    const std::uint64_t key = CounterRng::derive_key(seed, fnv1a64("procedural-texture"));
    const std::uint64_t r = CounterRng::at(key, static_cast<std::uint64_t>(pixel) * kBandCount + band + 1);
    return static_cast<int>(r % (2 * kTextureNoiseAmplitude + 1)) - kTextureNoiseAmplitude;
}

RasterTile procedural_inpaint(const RasterTile& image, const Grid<std::uint8_t>& alpha,
                              const RgbImage& condition, const ClassTable& classes, std::uint64_t seed) {
    RasterTile out = image;
    const std::size_t plane = image.plane_size();
    const auto clamp8 = [](int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); };
    for (std::size_t i = 0; i < plane; ++i) {
        const std::uint8_t a = alpha[i];
        if (a == 0) continue;
        const Rgb color{condition.pixels[3 * i], condition.pixels[3 * i + 1], condition.pixels[3 * i + 2]};
        const auto cls = classes.find_color(color);
        if (!cls) throw LabelError("condition map color not in the class table");
        const ClassInfo& info = classes[*cls];
        std::uint8_t synth[kBandCount];
        for (int b = 0; b < 3; ++b) synth[b] = clamp8(color[b] + texture_noise(seed, i, b));
        synth[3] = clamp8(info.nir_level + texture_noise(seed, i, 3));
        synth[4] = info.elevation_level;
        for (int b = 0; b < kBandCount; ++b) {
            auto dst = out.band(b);
            dst[i] = blend_sample(synth[b], image.band(b)[i], a);
        }
    }
    return out;
}

RasterTile ProceduralBackend::run(const InpaintRequest& request) {
    return procedural_inpaint(request.image, quantize(request.mask), request.condition, classes_,
                              request.seed);
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
    const std::size_t cap = sodium_base64_encoded_len(bytes.size(), sodium_base64_VARIANT_ORIGINAL);
    std::string out(cap, '\0');
    sodium_bin2base64(out.data(), cap, bytes.data(), bytes.size(), sodium_base64_VARIANT_ORIGINAL);
    out.resize(cap - 1); // drop the terminator
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    std::vector<std::uint8_t> out(text.size() / 4 * 3 + 3);
    std::size_t len = 0;
    const char* end = nullptr;
    if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end,
                          sodium_base64_VARIANT_ORIGINAL) != 0 ||
        end != text.data() + text.size()) {
        throw FormatError("malformed base64 payload");
    }
    out.resize(len);
    return out;
}

nlohmann::json to_wire(const InpaintRequest& r) {
    const Grid<std::uint8_t> alpha = quantize(r.mask);
    return {{"tile_id", r.tile_id},
            {"variant", r.variant},
            {"seed", r.seed},
            {"prompt", r.prompt},
            {"width", r.image.width()},
            {"height", r.image.height()},
            {"bands", kBandCount},
            {"image_b64", base64_encode(r.image.pixels())},
            {"mask_b64", base64_encode(alpha.storage())},
            {"condition_b64", base64_encode(r.condition.pixels)},
            {"params", r.params}};
}

WireRequest wire_request_from_json(const nlohmann::json& body) {
    if (!body.is_object()) throw WireError(400, "bad_request", "request body must be a JSON object");
    WireRequest out;
    int width = 0, height = 0, bands = 0;
    std::string image_b64, mask_b64, condition_b64;
    try {
        out.request.tile_id = body.at("tile_id").get<std::string>();
        out.request.variant = body.at("variant").get<int>();
        out.request.seed = body.at("seed").get<std::uint64_t>();
        out.request.prompt = body.at("prompt").get<std::string>();
        width = body.at("width").get<int>();
        height = body.at("height").get<int>();
        bands = body.at("bands").get<int>();
        image_b64 = body.at("image_b64").get<std::string>();
        mask_b64 = body.at("mask_b64").get<std::string>();
        condition_b64 = body.at("condition_b64").get<std::string>();
        if (body.contains("params")) out.request.params = body["params"];
    } catch (const nlohmann::json::exception& e) {
        throw WireError(400, "bad_request", std::string("schema violation: ") + e.what());
    }
    if (width <= 0 || height <= 0) throw WireError(400, "bad_request", "width and height must be positive");
    if (bands != kBandCount) throw WireError(422, "dimension_mismatch", "bands must be 5");

    std::vector<std::uint8_t> image, mask, condition;
    try {
        image = base64_decode(image_b64);
        mask = base64_decode(mask_b64);
        condition = base64_decode(condition_b64);
    } catch (const FormatError& e) {
        throw WireError(400, "bad_encoding", e.what());
    }
    const std::size_t plane = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (image.size() != plane * kBandCount || mask.size() != plane || condition.size() != plane * 3) {
        throw WireError(422, "dimension_mismatch", "payload sizes do not match width x height");
    }
    out.request.image = RasterTile(out.request.tile_id, width, height, GeoRef{});
    out.request.image.pixels() = std::move(image);
    out.alpha = Grid<std::uint8_t>(width, height);
    out.alpha.storage() = std::move(mask);
    out.request.mask = SoftMask(width, height);
    for (std::size_t i = 0; i < plane; ++i) out.request.mask[i] = out.alpha[i] / 255.0;
    out.request.condition = RgbImage{width, height, std::move(condition)};
    return out;
}

nlohmann::json wire_response(const RasterTile& image, const std::string& backend, double elapsed_ms) {
    return {{"image_b64", base64_encode(image.pixels())}, {"backend", backend}, {"elapsed_ms", elapsed_ms}};
}

} // namespace hyscdg
