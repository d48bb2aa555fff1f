#include "hyscdg/remote_backend.hpp"

#include "hyscdg/morphology.hpp"
#include "hyscdg/rng.hpp"

#include <chrono>
#include <future>
#include <semaphore>
#include <thread>

#include <httplib.h>

namespace hyscdg {
namespace {

constexpr std::ptrdiff_t kMaxInFlightCap = 1024;

std::unique_ptr<httplib::Client> make_client(const std::string& url, int timeout_ms) {
    auto client = std::make_unique<httplib::Client>(url);
    const auto sec = timeout_ms / 1000;
    const auto usec = (timeout_ms % 1000) * 1000;
    client->set_connection_timeout(sec, usec);
    client->set_read_timeout(sec, usec);
    client->set_write_timeout(sec, usec);
    return client;
}

std::string error_code_of(const std::string& body) {
    const auto j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_object() && j.contains("error") && j["error"].is_string()) return j["error"].get<std::string>();
    return {};
}

} // namespace

struct RemoteBackend::Impl {
    explicit Impl(int max_in_flight) : slots(max_in_flight) {}
    std::counting_semaphore<kMaxInFlightCap> slots;
};

RemoteBackend::RemoteBackend(RemoteConfig config) : config_(std::move(config)) {
    if (config_.url.empty()) throw ConfigError("remote backend needs a URL");
    if (config_.max_in_flight < 1 || config_.max_in_flight > kMaxInFlightCap) {
        throw ConfigError("remote backend in-flight bound must be in [1, 1024]");
    }
    if (config_.attempts < 1) throw ConfigError("remote backend needs at least one attempt");
    impl_ = std::make_unique<Impl>(config_.max_in_flight);
}

RemoteBackend::~RemoteBackend() = default;

RasterTile RemoteBackend::run(const InpaintRequest& request) {
    const std::string body = to_wire(request).dump();
    impl_->slots.acquire();
    struct Release {
        std::counting_semaphore<kMaxInFlightCap>& s;
        ~Release() { s.release(); }
    } release{impl_->slots};

    std::unique_ptr<BackendError> last;
    for (int attempt = 1; attempt <= config_.attempts; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(std::chrono::milliseconds(config_.backoff_ms << (attempt - 2)));
        }
        auto client = make_client(config_.url, config_.timeout_ms);
        ++requests_sent_;
        auto res = client->Post("/v1/inpaint", body, "application/json");
        if (!res) {
            const auto err = res.error();
            const bool timeout = err == httplib::Error::Read || err == httplib::Error::Write ||
                                 err == httplib::Error::ConnectionTimeout;
            last = std::make_unique<BackendError>(
                timeout ? BackendError::Kind::Timeout : BackendError::Kind::Transport,
                "inpaint request failed: " + httplib::to_string(err), attempt);
            continue;
        }
        if (res->status == 503) {
            last = std::make_unique<BackendError>(BackendError::Kind::Busy, "backend busy (503)", attempt, 503);
            continue;
        }
        if (res->status == 422) {
            throw BackendError(BackendError::Kind::DimensionMismatch,
                               "backend rejected dimensions: " + res->body, attempt, 422);
        }
        if (res->status != 200) {
            throw BackendError(BackendError::Kind::Http,
                               "backend returned HTTP " + std::to_string(res->status) + " " +
                                   error_code_of(res->body),
                               attempt, res->status);
        }
        const auto reply = nlohmann::json::parse(res->body, nullptr, false);
        if (!reply.is_object() || !reply.contains("image_b64") || !reply["image_b64"].is_string()) {
            throw BackendError(BackendError::Kind::Protocol, "malformed inpaint response", attempt, 200);
        }
        std::vector<std::uint8_t> pixels;
        try {
            pixels = base64_decode(reply["image_b64"].get<std::string>());
        } catch (const FormatError&) {
            throw BackendError(BackendError::Kind::Protocol, "response image is not valid base64", attempt, 200);
        }
        if (pixels.size() != request.image.pixels().size()) {
            throw BackendError(BackendError::Kind::DimensionMismatch,
                               "response image has " + std::to_string(pixels.size()) + " bytes, expected " +
                                   std::to_string(request.image.pixels().size()),
                               attempt, 200);
        }
        RasterTile out = request.image;
        out.pixels() = std::move(pixels);
        return out;
    }
    throw *last;
}

InpaintRequest golden_request(const ClassTable& classes, std::uint64_t seed, int size) {
    CounterRng rng = CounterRng(seed).split("golden");
    InpaintRequest r;
    r.tile_id = "golden";
    r.variant = 0;
    r.seed = seed;
    r.prompt = "golden parity request";
    r.image = RasterTile("golden", size, size, GeoRef{});
    for (auto& v : r.image.pixels()) v = static_cast<std::uint8_t>(rng() & 0xFF);

    // Four quadrants of random classes.
    SemanticMap map(size, size);
    ClassId quadrant[4];
    for (auto& q : quadrant) q = static_cast<ClassId>(rng.below(static_cast<std::uint64_t>(classes.size())));
    for (int y = 0; y < size; ++y) {
        for (int x = 0; x < size; ++x) map(x, y) = quadrant[(y >= size / 2) * 2 + (x >= size / 2)];
    }
    r.condition = render_condition_map(map, classes);

    BitMask core(size, size);
    const int cx = static_cast<int>(rng.below(static_cast<std::uint64_t>(size)));
    const int cy = static_cast<int>(rng.below(static_cast<std::uint64_t>(size)));
    core.set(cx, cy);
    core = dilate(core, size / 5.0);
    r.mask = feather(core, size / 8.0);
    return r;
}

std::vector<ProbeResult> run_conformance(const std::string& url, const ClassTable& classes,
                                         const ConformanceOptions& options) {
    std::vector<ProbeResult> results;
    const auto add = [&](std::string name, bool ok, std::string detail) {
        results.push_back({std::move(name), ok ? ProbeResult::Status::Pass : ProbeResult::Status::Fail,
                           std::move(detail)});
    };

    {
        auto client = make_client(url, options.timeout_ms);
        auto res = client->Get("/v1/health");
        if (!res) {
            add("health", false, "no response: " + httplib::to_string(res.error()));
        } else {
            const auto j = nlohmann::json::parse(res->body, nullptr, false);
            const bool ok = res->status == 200 && j.is_object() && j.value("status", std::string()) == "ok" &&
                            j.contains("backend");
            add("health", ok, "HTTP " + std::to_string(res->status) + " " + res->body);
        }
    }

    {
        ProceduralBackend local(classes);
        int matched = 0;
        std::string detail;
        for (int s = 0; s < options.parity_seeds; ++s) {
            const std::uint64_t seed = mix64(0xC0FFEEULL + static_cast<std::uint64_t>(s));
            const InpaintRequest req = golden_request(classes, seed, options.parity_size);
            const std::string expected = base64_encode(local.run(req).pixels());
            auto client = make_client(url, options.timeout_ms);
            auto res = client->Post("/v1/inpaint", to_wire(req).dump(), "application/json");
            if (!res || res->status != 200) {
                detail = "seed #" + std::to_string(s) + ": " +
                         (res ? "HTTP " + std::to_string(res->status) : httplib::to_string(res.error()));
                break;
            }
            const auto j = nlohmann::json::parse(res->body, nullptr, false);
            if (!j.is_object() || j.value("image_b64", std::string()) != expected) {
                detail = "seed #" + std::to_string(s) + ": image differs from the procedural reference";
                break;
            }
            ++matched;
        }
        add("golden-parity", matched == options.parity_seeds,
            std::to_string(matched) + "/" + std::to_string(options.parity_seeds) + " byte-identical" +
                (detail.empty() ? "" : "; " + detail));
    }

    const InpaintRequest base = golden_request(classes, 7, options.parity_size);
    const auto post_expect = [&](const std::string& name, const std::string& body, int expected_status,
                                 const std::string& expected_code) {
        auto client = make_client(url, options.timeout_ms);
        auto res = client->Post("/v1/inpaint", body, "application/json");
        if (!res) {
            add(name, false, "no response: " + httplib::to_string(res.error()));
            return;
        }
        const std::string code = error_code_of(res->body);
        const bool ok = res->status == expected_status && (expected_code.empty() || code == expected_code);
        add(name, ok, "HTTP " + std::to_string(res->status) + (code.empty() ? "" : " " + code));
    };
    post_expect("malformed-json-400", "{\"tile_id\": ", 400, "");
    {
        auto body = to_wire(base);
        body["image_b64"] = "@@not base64@@";
        post_expect("bad-encoding-400", body.dump(), 400, "bad_encoding");
    }
    {
        auto body = to_wire(base);
        body["width"] = base.image.width() + 1;
        post_expect("dimension-mismatch-422", body.dump(), 422, "");
    }

    {
        const std::string body = to_wire(golden_request(classes, 11, options.busy_size)).dump();
        std::vector<std::future<int>> futures;
        for (int i = 0; i < options.busy_burst; ++i) {
            futures.push_back(std::async(std::launch::async, [&] {
                auto client = make_client(url, options.timeout_ms);
                auto res = client->Post("/v1/inpaint", body, "application/json");
                return res ? res->status : -1;
            }));
        }
        int busy = 0, ok = 0, other = 0;
        for (auto& f : futures) {
            const int status = f.get();
            if (status == 503) ++busy;
            else if (status == 200) ++ok;
            else ++other;
        }
        add("busy-503", busy > 0 && other == 0,
            std::to_string(busy) + " x 503, " + std::to_string(ok) + " x 200, " + std::to_string(other) +
                " other out of a burst of " + std::to_string(options.busy_burst));
    }
    return results;
}

} // namespace hyscdg
