#include "hyscdg/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace hyscdg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1-D squared distance transform of a sampled function (lower envelope of parabolas).
void edt_1d(const double* f, double* d, int n, std::vector<int>& v, std::vector<double>& z) {
    v.assign(static_cast<std::size_t>(n), 0);
    z.assign(static_cast<std::size_t>(n) + 1, 0.0);
    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (f[q] == kInf) continue;
        if (k < 0) {
            k = 0;
            v[0] = q;
            z[0] = -kInf;
            z[1] = kInf;
            continue;
        }
        double s = 0.0;
        while (true) {
            const int p = v[k];
            s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
            // z[0] is -inf, so k never drops below zero.
            if (s <= z[k]) {
                --k;
                continue;
            }
            break;
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    if (k < 0) {
        std::fill(d, d + n, kInf);
        return;
    }
    int j = 0;
    for (int q = 0; q < n; ++q) {
        while (z[j + 1] < q) ++j;
        const double dq = q - v[j];
        d[q] = dq * dq + f[v[j]];
    }
}

struct HullPoint {
    std::int64_t x;
    std::int64_t y;
};

std::int64_t cross(HullPoint o, HullPoint a, HullPoint b) noexcept {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

} // namespace

Grid<double> squared_distance_transform(const BitMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    Grid<double> out(w, h, kInf);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) out[i] = 0.0;
    }
    std::vector<int> v;
    std::vector<double> z;
    std::vector<double> f(static_cast<std::size_t>(std::max(w, h)));
    std::vector<double> d(f.size());
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[y] = out(x, y);
        edt_1d(f.data(), d.data(), h, v, z);
        for (int y = 0; y < h; ++y) out(x, y) = d[y];
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f[x] = out(x, y);
        edt_1d(f.data(), d.data(), w, v, z);
        for (int x = 0; x < w; ++x) out(x, y) = d[x];
    }
    return out;
}

BitMask dilate(const BitMask& mask, double radius) {
    if (radius < 0.0) throw Error("dilation radius must be non-negative");
    if (radius == 0.0) return mask;
    const Grid<double> sq = squared_distance_transform(mask);
    const double r2 = radius * radius;
    BitMask out(mask.width(), mask.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = sq[i] <= r2 ? 1 : 0;
    return out;
}

SoftMask feather(const BitMask& core, double band) {
    if (band < 0.0) throw Error("feather band must be non-negative");
    SoftMask out(core.width(), core.height());
    if (band == 0.0) {
        for (std::size_t i = 0; i < core.size(); ++i) out[i] = core[i] ? 1.0 : 0.0;
        return out;
    }
    const Grid<double> sq = squared_distance_transform(core);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (sq[i] == 0.0) {
            out[i] = 1.0;
        } else if (sq[i] <= band * band) {
            out[i] = 1.0 - std::sqrt(sq[i]) / band;
        }
    }
    return out;
}

ComponentLabels label_components(const BitMask& mask, Connectivity connectivity) {
    const int w = mask.width();
    const int h = mask.height();
    ComponentLabels result{Grid<int>(w, h, 0), {}};
    std::vector<std::pair<int, int>> stack;
    const bool eight = connectivity == Connectivity::Eight;
    for (int y0 = 0; y0 < h; ++y0) {
        for (int x0 = 0; x0 < w; ++x0) {
            if (!mask.test(x0, y0) || result.labels(x0, y0) != 0) continue;
            const int label = static_cast<int>(result.sizes.size()) + 1;
            std::size_t size = 0;
            result.labels(x0, y0) = label;
            stack.emplace_back(x0, y0);
            while (!stack.empty()) {
                const auto [x, y] = stack.back();
                stack.pop_back();
                ++size;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if ((dx == 0 && dy == 0) || (!eight && dx != 0 && dy != 0)) continue;
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (mask.contains(nx, ny) && mask.test(nx, ny) && result.labels(nx, ny) == 0) {
                            result.labels(nx, ny) = label;
                            stack.emplace_back(nx, ny);
                        }
                    }
                }
            }
            result.sizes.push_back(size);
        }
    }
    return result;
}

BitMask largest_component(const BitMask& mask, Connectivity connectivity) {
    const ComponentLabels comps = label_components(mask, connectivity);
    BitMask out(mask.width(), mask.height());
    if (comps.sizes.empty()) return out;
    // max_element returns the first maximum, i.e. the earliest component in row-major order.
    const auto best = std::max_element(comps.sizes.begin(), comps.sizes.end());
    const int label = static_cast<int>(best - comps.sizes.begin()) + 1;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = comps.labels[i] == label ? 1 : 0;
    return out;
}

BitMask convex_hull_mask(const BitMask& mask) {
    std::vector<HullPoint> pts;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (mask.test(x, y)) pts.push_back({x, y});
        }
    }
    BitMask out = mask;
    if (pts.size() < 2) return out;

    // Andrew's monotone chain, collinear points dropped.
    std::sort(pts.begin(), pts.end(), [](HullPoint a, HullPoint b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    std::vector<HullPoint> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);

    std::int64_t min_x = hull[0].x, max_x = hull[0].x, min_y = hull[0].y, max_y = hull[0].y;
    for (const auto& p : hull) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const std::size_t n = hull.size();
    for (std::int64_t y = min_y; y <= max_y; ++y) {
        for (std::int64_t x = min_x; x <= max_x; ++x) {
            const HullPoint p{x, y};
            bool inside = true;
            if (n <= 2) {
                // Collinear input: the hull is a segment.
                inside = cross(hull[0], hull[n - 1], p) == 0;
            } else {
                for (std::size_t i = 0; i < n && inside; ++i) {
                    if (cross(hull[i], hull[(i + 1) % n], p) < 0) inside = false;
                }
            }
            if (inside) out.set(static_cast<int>(x), static_cast<int>(y));
        }
    }
    return out;
}

} // namespace hyscdg
