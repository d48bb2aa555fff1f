#pragma once

#include "hyscdg/raster.hpp"

#include <cstdint>
#include <vector>

namespace hyscdg {

/// Row-major run lengths alternating zero-run / one-run, starting with the zero-run
/// (which may be 0). Runs sum to width * height.
[[nodiscard]] std::vector<std::uint32_t> rle_encode(const BitMask& mask);

/// Throws FormatError when the runs do not cover exactly width * height pixels.
[[nodiscard]] BitMask rle_decode(const std::vector<std::uint32_t>& runs, int width, int height);

} // namespace hyscdg
