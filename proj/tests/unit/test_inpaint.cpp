#include "hyscdg/inpaint.hpp"
#include "hyscdg/rng.hpp"

#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

using namespace hyscdg;

namespace {

InpaintRequest make_request(int w, int h, const SemanticMap& planned, std::uint64_t seed) {
    InpaintRequest r;
    r.tile_id = "t";
    r.seed = seed;
    r.image = RasterTile("t", w, h, GeoRef{});
    CounterRng rng(seed ^ 0x55);
    for (auto& v : r.image.pixels()) v = static_cast<std::uint8_t>(rng() & 0xFF);
    r.mask = SoftMask(w, h);
    r.condition = render_condition_map(planned, ClassTable::flair16());
    return r;
}

} // namespace

TEST(ConditionMap, LegendColors) {
    const ClassTable t = ClassTable::flair16();
    const RgbImage building = render_condition_map(SemanticMap(5, 3, 0), t);
    for (std::size_t i = 0; i < 15; ++i) {
        ASSERT_EQ(building.pixels[3 * i], 219);
        ASSERT_EQ(building.pixels[3 * i + 1], 14);
        ASSERT_EQ(building.pixels[3 * i + 2], 154);
    }
    const RgbImage water = render_condition_map(SemanticMap(5, 3, 4), t);
    for (std::size_t i = 0; i < 15; ++i) {
        ASSERT_EQ(water.pixels[3 * i], 21);
        ASSERT_EQ(water.pixels[3 * i + 1], 83);
        ASSERT_EQ(water.pixels[3 * i + 2], 174);
    }
}

TEST(ConditionMap, CheckerboardAndInjectivity) {
    const ClassTable t = ClassTable::flair16();
    SemanticMap m(4, 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) m(x, y) = static_cast<ClassId>((x + y) % 2 ? 4 : 0);
    const RgbImage c = render_condition_map(m, t);
    for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
            const std::size_t i = static_cast<std::size_t>(y * 4 + x);
            const Rgb want = t[m(x, y)].color;
            EXPECT_EQ((Rgb{c.pixels[3 * i], c.pixels[3 * i + 1], c.pixels[3 * i + 2]}), want);
        }
    }
    for (int a = 0; a < t.size(); ++a)
        for (int b = a + 1; b < t.size(); ++b) EXPECT_NE(t[static_cast<ClassId>(a)].color, t[static_cast<ClassId>(b)].color);
    m[0] = 16;
    EXPECT_THROW((void)render_condition_map(m, t), LabelError);
}

TEST(Blend, MatchesRoundedRealArithmetic) {
    for (int a = 0; a < 256; a += 5) {
        for (int s = 0; s < 256; s += 17) {
            for (int in = 0; in < 256; in += 13) {
                const double exact = (a * s + (255 - a) * in) / 255.0;
                const int got = blend_sample(static_cast<std::uint8_t>(s), static_cast<std::uint8_t>(in),
                                             static_cast<std::uint8_t>(a));
                ASSERT_LE(std::abs(got - exact), 0.5 + 1e-9);
            }
        }
    }
    EXPECT_EQ(blend_sample(200, 10, 0), 10);
    EXPECT_EQ(blend_sample(200, 10, 255), 200);
}

TEST(Procedural, ZeroMaskIsIdentity) {
    ProceduralBackend backend(ClassTable::flair16());
    const InpaintRequest r = make_request(16, 12, SemanticMap(16, 12, 3), 4);
    EXPECT_EQ(inpaint(backend, r).image.pixels(), r.image.pixels());
}

TEST(Procedural, HardBuildingMaskStaysNearLegendColor) {
    ProceduralBackend backend(ClassTable::flair16());
    InpaintRequest r = make_request(16, 16, SemanticMap(16, 16, 0), 11);
    for (int y = 4; y < 12; ++y)
        for (int x = 4; x < 12; ++x) r.mask(x, y) = 1.0;
    const InpaintResult out = inpaint(backend, r);
    const Rgb legend{219, 14, 154};
    for (int y = 0; y < 16; ++y) {
        for (int x = 0; x < 16; ++x) {
            const std::size_t i = static_cast<std::size_t>(y * 16 + x);
            for (int b = 0; b < 3; ++b) {
                if (r.mask[i] == 1.0) {
                    const int want = std::clamp(legend[b] + texture_noise(11, i, b), 0, 255);
                    ASSERT_EQ(out.image.band(b)[i], want);
                    ASSERT_LE(std::abs(out.image.band(b)[i] - legend[b]), kTextureNoiseAmplitude);
                } else {
                    ASSERT_EQ(out.image.band(b)[i], r.image.band(b)[i]);
                }
            }
            if (r.mask[i] == 1.0) ASSERT_EQ(out.image.band(4)[i], ClassTable::flair16()[0].elevation_level);
        }
    }
    EXPECT_EQ(out.backend, "procedural");
}

TEST(Procedural, DeterministicAndSeedSensitive) {
    ProceduralBackend backend(ClassTable::flair16());
    InpaintRequest r = make_request(8, 8, SemanticMap(8, 8, 9), 1);
    for (auto& v : r.mask.storage()) v = 1.0;
    const auto a = inpaint(backend, r).image.pixels();
    EXPECT_EQ(inpaint(backend, r).image.pixels(), a);
    r.seed = 2;
    EXPECT_NE(inpaint(backend, r).image.pixels(), a);
}

TEST(Procedural, SoftWeightsBlend) {
    ProceduralBackend backend(ClassTable::flair16());
    InpaintRequest r = make_request(4, 1, SemanticMap(4, 1, 4), 5);
    r.mask[1] = 0.5;
    const auto out = inpaint(backend, r).image;
    const int synth = std::clamp(21 + texture_noise(5, 1, 0), 0, 255);
    EXPECT_EQ(out.band(0)[1], blend_sample(static_cast<std::uint8_t>(synth), r.image.band(0)[1], 128));
}

namespace {

/// Returns noise in masked-out pixels; the client must undo it.
class LeakyBackend final : public InpaintBackend {
public:
    std::string id() const override { return "leaky"; }
    std::string version() const override { return "0"; }
    RasterTile run(const InpaintRequest& r) override {
        RasterTile t = r.image;
        for (auto& v : t.pixels()) v = static_cast<std::uint8_t>(v + 1);
        return t;
    }
};

} // namespace

TEST(Inpaint, ClientEnforcesOutsideSupportIdentity) {
    LeakyBackend backend;
    InpaintRequest r = make_request(6, 6, SemanticMap(6, 6, 1), 3);
    r.mask(2, 2) = 1.0;
    r.mask(3, 2) = 0.001; // quantizes to 0
    const auto out = inpaint(backend, r).image;
    for (int b = 0; b < kBandCount; ++b) {
        for (std::size_t i = 0; i < out.plane_size(); ++i) {
            if (i == 2 * 6 + 2) {
                EXPECT_NE(out.band(b)[i], r.image.band(b)[i]);
            } else {
                ASSERT_EQ(out.band(b)[i], r.image.band(b)[i]);
            }
        }
    }
}

TEST(Inpaint, ValidationRejectsBadRequests) {
    ProceduralBackend backend(ClassTable::flair16());
    InpaintRequest r = make_request(4, 4, SemanticMap(4, 4, 0), 1);
    r.mask[0] = 1.5;
    EXPECT_THROW((void)inpaint(backend, r), Error);
    r = make_request(4, 4, SemanticMap(4, 4, 0), 1);
    r.condition = render_condition_map(SemanticMap(3, 4, 0), ClassTable::flair16());
    EXPECT_THROW((void)inpaint(backend, r), Error);
}

TEST(Base64, KnownVectorsAndRoundTrip) {
    const std::string text = "foobar";
    const std::vector<std::uint8_t> bytes(text.begin(), text.end());
    EXPECT_EQ(base64_encode(std::span(bytes).first(0)), "");
    EXPECT_EQ(base64_encode(std::span(bytes).first(1)), "Zg==");
    EXPECT_EQ(base64_encode(std::span(bytes).first(4)), "Zm9vYg==");
    EXPECT_EQ(base64_encode(bytes), "Zm9vYmFy");
    EXPECT_EQ(base64_decode("Zm9vYmFy"), bytes);
    CounterRng rng(8);
    std::vector<std::uint8_t> random(1001);
    for (auto& v : random) v = static_cast<std::uint8_t>(rng());
    EXPECT_EQ(base64_decode(base64_encode(random)), random);
    EXPECT_THROW((void)base64_decode("Zm9v!mFy"), FormatError);
}

TEST(Wire, RoundTripPreservesTheRequest) {
    InpaintRequest r = make_request(5, 3, SemanticMap(5, 3, 7), 99);
    r.prompt = "Water, in the evening.";
    r.mask[4] = 0.5;
    const WireRequest back = wire_request_from_json(nlohmann::json::parse(to_wire(r).dump()));
    EXPECT_EQ(back.request.seed, 99u);
    EXPECT_EQ(back.request.prompt, r.prompt);
    EXPECT_EQ(back.request.image.pixels(), r.image.pixels());
    EXPECT_EQ(back.request.condition, r.condition);
    EXPECT_EQ(back.alpha[4], 128);
    EXPECT_EQ(back.alpha[0], 0);
}

TEST(Wire, ErrorsCarryStatusAndCode) {
    const InpaintRequest r = make_request(5, 3, SemanticMap(5, 3, 7), 1);
    const auto status_of = [](const nlohmann::json& body) {
        try {
            (void)wire_request_from_json(body);
        } catch (const WireError& e) {
            return std::pair{e.status(), e.code()};
        }
        return std::pair{200, std::string()};
    };
    nlohmann::json body = to_wire(r);
    EXPECT_EQ(status_of(body).first, 200);
    EXPECT_EQ(status_of(nlohmann::json::array()), (std::pair{400, std::string("bad_request")}));
    nlohmann::json missing = body;
    missing.erase("prompt");
    EXPECT_EQ(status_of(missing), (std::pair{400, std::string("bad_request")}));
    nlohmann::json bad = body;
    bad["mask_b64"] = "%%%";
    EXPECT_EQ(status_of(bad), (std::pair{400, std::string("bad_encoding")}));
    nlohmann::json wide = body;
    wide["width"] = 6;
    EXPECT_EQ(status_of(wide), (std::pair{422, std::string("dimension_mismatch")}));
    nlohmann::json bands = body;
    bands["bands"] = 4;
    EXPECT_EQ(status_of(bands).first, 422);
}

TEST(Wire, ResponseShape) {
    const RasterTile t("t", 2, 2, GeoRef{});
    const auto j = wire_response(t, "procedural", 1.5);
    EXPECT_EQ(j["backend"], "procedural");
    EXPECT_EQ(base64_decode(j["image_b64"].get<std::string>()), t.pixels());
}
