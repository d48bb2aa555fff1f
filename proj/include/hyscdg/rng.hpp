#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace hyscdg {

/// SplitMix64 finalizer (Steele, Lea & Flood 2014).
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// FNV-1a 64-bit, used to fold names into stream keys.
[[nodiscard]] constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Counter-based generator: the i-th output (i = 1, 2, ...) is mix64(key + i * gamma).
/// Any output is addressable without stepping, and child streams are derived by hashing,
/// so per-(tile, variant) streams do not depend on scheduling.
class CounterRng {
public:
    using result_type = std::uint64_t;

    constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    [[nodiscard]] static constexpr result_type min() noexcept { return 0; }
    [[nodiscard]] static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    /// Stateless access to output number `counter` of stream `key`.
    [[nodiscard]] static constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) noexcept {
        return mix64(key + counter * kGoldenGamma);
    }

    constexpr result_type operator()() noexcept { return at(key_, ++counter_); }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform01() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound) by rejection; bound > 0.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t r = (*this)();
        while (r >= limit) r = (*this)();
        return r % bound;
    }

    /// Independent child stream named by `label`.
    [[nodiscard]] constexpr CounterRng split(std::string_view label) const noexcept {
        return CounterRng(derive_key(key_, fnv1a64(label)));
    }

    [[nodiscard]] constexpr std::uint64_t key() const noexcept { return key_; }
    [[nodiscard]] constexpr std::uint64_t counter() const noexcept { return counter_; }

    [[nodiscard]] static constexpr std::uint64_t derive_key(std::uint64_t parent,
                                                            std::uint64_t salt) noexcept {
        return mix64(mix64(parent ^ kGoldenGamma) + salt);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Seed of the plan for one (tile, variant) pair under a master seed.
[[nodiscard]] constexpr std::uint64_t derive_plan_seed(std::uint64_t master, std::string_view tile_id,
                                                       int variant) noexcept {
    const std::uint64_t tile_key = CounterRng::derive_key(master, fnv1a64(tile_id));
    return CounterRng::derive_key(tile_key, static_cast<std::uint64_t>(variant));
}

} // namespace hyscdg
