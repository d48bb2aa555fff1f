#pragma once

#include "hyscdg/class_table.hpp"
#include "hyscdg/raster.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace hyscdg {

/// Legend-color rendering of a semantic map; throws LabelError for labels outside the table.
[[nodiscard]] RgbImage render_condition_map(const SemanticMap& map, const ClassTable& classes);

struct InpaintRequest {
    std::string tile_id;
    int variant = 0;
    std::uint64_t seed = 0;
    std::string prompt;
    RasterTile image;
    SoftMask mask;
    RgbImage condition;
    /// Reserved for model parameters (steps, guidance); backends may ignore it.
    nlohmann::json params = nlohmann::json::object();
};

struct InpaintResult {
    RasterTile image;
    std::string backend;
    std::string version;
    double elapsed_ms = 0.0;
};

/// Throws Error unless mask and condition match the image and weights are in [0,1].
void validate_request(const InpaintRequest& request);

/// Pixel-synthesis boundary. Implementations must be safe for concurrent calls.
class InpaintBackend {
public:
    virtual ~InpaintBackend() = default;
    [[nodiscard]] virtual std::string id() const = 0;
    [[nodiscard]] virtual std::string version() const = 0;
    /// Returns the blended image: alpha * synth + (1 - alpha) * input.
    [[nodiscard]] virtual RasterTile run(const InpaintRequest& request) = 0;
};

/// Validates, runs the backend, then enforces the outside-support identity: pixels whose
/// 8-bit weight is 0 are copied from the input whatever the backend returned.
[[nodiscard]] InpaintResult inpaint(InpaintBackend& backend, const InpaintRequest& request);

/// round((alpha * synth + (255 - alpha) * input) / 255) in integer arithmetic.
[[nodiscard]] constexpr std::uint8_t blend_sample(std::uint8_t synth, std::uint8_t input,
                                                  std::uint8_t alpha) noexcept {
    const unsigned v = static_cast<unsigned>(alpha) * synth + (255u - alpha) * input + 127u;
    return static_cast<std::uint8_t>(v / 255u);
}

inline constexpr int kTextureNoiseAmplitude = 16;

/// Seeded noise in [-16, 16] for one (pixel, band); the pixel index is row-major.
[[nodiscard]] int texture_noise(std::uint64_t seed, std::size_t pixel, int band) noexcept;

/// Seeded per-class texture blended into `image` under the 8-bit alpha mask.
/// The class at each pixel is recovered from the condition map's legend color.
[[nodiscard]] RasterTile procedural_inpaint(const RasterTile& image, const Grid<std::uint8_t>& alpha,
                                            const RgbImage& condition, const ClassTable& classes,
                                            std::uint64_t seed);

/// In-process deterministic backend for tests and desk-scale runs.
class ProceduralBackend final : public InpaintBackend {
public:
    explicit ProceduralBackend(ClassTable classes) : classes_(std::move(classes)) {}
    [[nodiscard]] std::string id() const override { return "procedural"; }
    [[nodiscard]] std::string version() const override { return "1"; }
    [[nodiscard]] RasterTile run(const InpaintRequest& request) override;

private:
    ClassTable classes_;
};

// Wire protocol (`POST /v1/inpaint`).

[[nodiscard]] std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws FormatError for malformed input.
[[nodiscard]] std::vector<std::uint8_t> base64_decode(const std::string& text);

[[nodiscard]] nlohmann::json to_wire(const InpaintRequest& request);

/// Wire-level validation failure with the HTTP status and error code to report.
class WireError : public Error {
public:
    WireError(int status, std::string code, const std::string& message)
        : Error(message), status_(status), code_(std::move(code)) {}
    [[nodiscard]] int status() const noexcept { return status_; }
    [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
    int status_;
    std::string code_;
};

/// Decoded request body; `alpha` is the 8-bit mask exactly as sent.
struct WireRequest {
    InpaintRequest request;
    Grid<std::uint8_t> alpha;
};

/// 400 for schema / encoding problems ("bad_request", "bad_encoding"), 422 for size mismatches.
[[nodiscard]] WireRequest wire_request_from_json(const nlohmann::json& body);

[[nodiscard]] nlohmann::json wire_response(const RasterTile& image, const std::string& backend,
                                           double elapsed_ms);

} // namespace hyscdg
