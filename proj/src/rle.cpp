#include "hyscdg/rle.hpp"

namespace hyscdg {

std::vector<std::uint32_t> rle_encode(const BitMask& mask) {
    std::vector<std::uint32_t> runs;
    std::uint8_t current = 0;
    std::uint32_t length = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const std::uint8_t v = mask[i] ? 1 : 0;
        if (v != current) {
            runs.push_back(length);
            current = v;
            length = 0;
        }
        ++length;
    }
    runs.push_back(length);
    return runs;
}

BitMask rle_decode(const std::vector<std::uint32_t>& runs, int width, int height) {
    BitMask mask(width, height);
    std::size_t pos = 0;
    std::uint8_t value = 0;
    for (const auto run : runs) {
        if (pos + run > mask.size()) throw FormatError("RLE runs exceed mask size");
        for (std::uint32_t k = 0; k < run; ++k) mask[pos++] = value;
        value ^= 1;
    }
    if (pos != mask.size()) throw FormatError("RLE runs do not cover the mask");
    return mask;
}

} // namespace hyscdg
