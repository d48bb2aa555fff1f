#pragma once

#include "hyscdg/class_table.hpp"
#include "hyscdg/inpaint.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hyscdg {

struct RemoteConfig {
    /// e.g. "http://127.0.0.1:8080"
    std::string url;
    int timeout_ms = 120000;
    int max_in_flight = 4;
    int attempts = 3;
    int backoff_ms = 250;
};

/// Remote failure with retry metadata.
class BackendError : public Error {
public:
    enum class Kind { Transport, Timeout, Busy, Http, DimensionMismatch, Protocol };

    BackendError(Kind kind, const std::string& message, int attempts, int status = 0)
        : Error(message), kind_(kind), attempts_(attempts), status_(status) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] int attempts() const noexcept { return attempts_; }
    /// HTTP status when one was received, else 0.
    [[nodiscard]] int status() const noexcept { return status_; }
    [[nodiscard]] bool retryable() const noexcept {
        return kind_ == Kind::Transport || kind_ == Kind::Timeout || kind_ == Kind::Busy;
    }

private:
    Kind kind_;
    int attempts_;
    int status_;
};

/// HTTP client for the inpainting wire protocol. Bounds in-flight requests and retries
/// transport failures, timeouts and 503 with exponential backoff.
class RemoteBackend final : public InpaintBackend {
public:
    explicit RemoteBackend(RemoteConfig config);
    ~RemoteBackend() override;

    [[nodiscard]] std::string id() const override { return "remote"; }
    [[nodiscard]] std::string version() const override { return "wire-v1"; }
    [[nodiscard]] RasterTile run(const InpaintRequest& request) override;

    [[nodiscard]] std::uint64_t requests_sent() const noexcept { return requests_sent_.load(); }

private:
    struct Impl;
    RemoteConfig config_;
    std::unique_ptr<Impl> impl_;
    std::atomic<std::uint64_t> requests_sent_{0};
};

struct ProbeResult {
    enum class Status { Pass, Fail };
    std::string name;
    Status status = Status::Fail;
    std::string detail;
};

struct ConformanceOptions {
    int parity_seeds = 20;
    int parity_size = 64;
    /// Concurrent requests fired to provoke a 503.
    int busy_burst = 32;
    int busy_size = 256;
    int timeout_ms = 30000;
};

/// Deterministic golden request used by the parity probe.
[[nodiscard]] InpaintRequest golden_request(const ClassTable& classes, std::uint64_t seed, int size);

/// Probes health, golden parity against the in-process procedural backend, and the
/// 400 / 422 / 503 error paths of a running service.
[[nodiscard]] std::vector<ProbeResult> run_conformance(const std::string& url, const ClassTable& classes,
                                                       const ConformanceOptions& options = {});

} // namespace hyscdg
