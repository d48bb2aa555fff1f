#include "hyscdg/change_planner.hpp"

#include "hyscdg/geometry.hpp"
#include "hyscdg/rle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace hyscdg {

PlanBudget sample_budget(int available, CounterRng& rng) {
    if (available < 0) throw Error("instance count must be non-negative");
    PlanBudget b;
    b.available = available;
    const int cap = std::min(kMaxChangesPerPlan, available);
    const double u = 10.0 * rng.uniform01();
    b.changes = std::min(static_cast<int>(std::floor(std::sqrt(u))), cap);
    const double u2 = 10.0 * rng.uniform01();
    b.decoys = std::min(static_cast<int>(std::floor(std::sqrt(u2 * (1.0 - b.changes / 4.0)))), cap);
    return b;
}

ClassId modal_class(const SemanticMap& map, const BitMask& footprint) {
    if (!map.same_shape(footprint)) throw Error("footprint and map shapes differ");
    std::vector<std::size_t> counts(256, 0);
    std::size_t area = 0;
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (footprint[i]) {
            ++counts[map[i]];
            ++area;
        }
    }
    if (area == 0) throw EmptyMaskError("footprint covers no pixel of the tile");
    // max_element keeps the first maximum: the smallest class id wins ties.
    return static_cast<ClassId>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

BitMask build_change_mask(const SemanticMap& map, const BitMask& footprint, const BitMask& buffered,
                          ClassId from_class) {
    if (!map.same_shape(buffered) || !map.same_shape(footprint)) throw Error("mask and map shapes differ");
    BitMask candidates(map.width(), map.height());
    for (std::size_t i = 0; i < map.size(); ++i) {
        candidates[i] = (buffered[i] && map[i] == from_class) ? 1 : 0;
    }
    if (!candidates.any()) throw EmptyMaskError("no pixel of the source class inside the buffer");
    BitMask change = convex_hull_mask(largest_component(candidates, Connectivity::Eight));
    change &= buffered;
    return change;
}

std::vector<double> new_class_weights(const ClassStats& stats, const SemanticMap& map,
                                      const BitMask& change_mask, ClassId from_class) {
    const int k = stats.class_count();
    if (from_class >= k) throw LabelError("source class outside the class statistics");
    std::vector<std::uint64_t> local(static_cast<std::size_t>(k), 0);
    std::uint64_t area = 0;
    for (std::size_t i = 0; i < map.size(); ++i) {
        if (!change_mask[i]) continue;
        if (map[i] >= k) throw LabelError("label outside the class statistics");
        ++local[map[i]];
        ++area;
    }
    const double eps = 1.0 / static_cast<double>(area + static_cast<std::uint64_t>(k));
    std::vector<double> w(static_cast<std::size_t>(k), 0.0);
    for (int c = 0; c < k; ++c) {
        if (c == from_class) continue;
        const double f_local = area ? static_cast<double>(local[c]) / static_cast<double>(area) : 0.0;
        w[c] = stats.frequency(static_cast<ClassId>(c)) / (f_local + eps);
    }
    return w;
}

ClassId pick_new_class(const ClassStats& stats, const SemanticMap& map, const BitMask& change_mask,
                       ClassId from_class, CounterRng& rng) {
    std::vector<double> w = new_class_weights(stats, map, change_mask, from_class);
    double total = std::accumulate(w.begin(), w.end(), 0.0);
    if (!(total > 0.0)) {
        for (std::size_t c = 0; c < w.size(); ++c) w[c] = c == from_class ? 0.0 : 1.0;
        total = static_cast<double>(w.size() - 1);
    }
    const double target = rng.uniform01() * total;
    double acc = 0.0;
    ClassId last = from_class;
    for (std::size_t c = 0; c < w.size(); ++c) {
        if (w[c] <= 0.0) continue;
        acc += w[c];
        last = static_cast<ClassId>(c);
        if (target < acc) return last;
    }
    return last; // rounding at the top of the cumulative sum
}

std::vector<BitMask> sample_decoys(int count, int width, int height, CounterRng& rng) {
    if (count < 0) throw Error("decoy count must be non-negative");
    std::vector<BitMask> out;
    const double area = static_cast<double>(width) * height;
    const auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(kDecoyMinFraction * area)));
    const auto hi = std::max<std::int64_t>(lo, static_cast<std::int64_t>(std::floor(kDecoyMaxFraction * area)));
    const int spacing = std::max(4, std::min(width, height) / 8);
    const int gw = width / spacing + 2;
    const int gh = height / spacing + 2;

    for (int d = 0; d < count; ++d) {
        // Value noise on a coarse lattice, bilinearly interpolated.
        std::vector<double> lattice(static_cast<std::size_t>(gw) * gh);
        for (auto& v : lattice) v = rng.uniform01();
        Grid<double> field(width, height);
        for (int y = 0; y < height; ++y) {
            const double fy = static_cast<double>(y) / spacing;
            const int y0 = static_cast<int>(fy);
            const double ty = fy - y0;
            for (int x = 0; x < width; ++x) {
                const double fx = static_cast<double>(x) / spacing;
                const int x0 = static_cast<int>(fx);
                const double tx = fx - x0;
                const auto at = [&](int gx, int gy) { return lattice[static_cast<std::size_t>(gy) * gw + gx]; };
                const double top = at(x0, y0) * (1 - tx) + at(x0 + 1, y0) * tx;
                const double bottom = at(x0, y0 + 1) * (1 - tx) + at(x0 + 1, y0 + 1) * tx;
                field(x, y) = top * (1 - ty) + bottom * ty;
            }
        }
        const auto seed_x = static_cast<int>(rng.below(static_cast<std::uint64_t>(width)));
        const auto seed_y = static_cast<int>(rng.below(static_cast<std::uint64_t>(height)));
        const auto target = lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));

        // Grow from the seed through the highest-valued frontier pixel: the result is a
        // single 4-connected superlevel blob of exactly `target` pixels.
        using Entry = std::pair<double, std::int64_t>; // (value, -index) so ties pick the lower index
        std::priority_queue<Entry> frontier;
        BitMask blob(width, height);
        BitMask queued(width, height);
        frontier.emplace(field(seed_x, seed_y), -static_cast<std::int64_t>(blob.index(seed_x, seed_y)));
        queued.set(seed_x, seed_y);
        std::int64_t grown = 0;
        while (!frontier.empty() && grown < target) {
            const auto idx = static_cast<std::size_t>(-frontier.top().second);
            frontier.pop();
            blob[idx] = 1;
            ++grown;
            const int x = static_cast<int>(idx % static_cast<std::size_t>(width));
            const int y = static_cast<int>(idx / static_cast<std::size_t>(width));
            constexpr int dx[4] = {1, -1, 0, 0};
            constexpr int dy[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                const int nx = x + dx[k];
                const int ny = y + dy[k];
                if (!blob.contains(nx, ny) || queued.test(nx, ny)) continue;
                queued.set(nx, ny);
                frontier.emplace(field(nx, ny), -static_cast<std::int64_t>(blob.index(nx, ny)));
            }
        }
        out.push_back(std::move(blob));
    }
    return out;
}

nlohmann::json to_json(const PlannerConfig& config) {
    return {{"buffer_px", config.buffer_px},
            {"feather_px", config.feather_px},
            {"variants", config.variants},
            {"tau", config.tau}};
}

PlannerConfig planner_config_from_json(const nlohmann::json& j) {
    PlannerConfig c;
    c.buffer_px = j.value("buffer_px", c.buffer_px);
    c.feather_px = j.value("feather_px", c.feather_px);
    c.variants = j.value("variants", c.variants);
    c.tau = j.value("tau", c.tau);
    return c;
}

namespace {

void finish_plan(ChangePlan& plan, const SemanticMap& real) {
    plan.inpaint_core = BitMask(real.width(), real.height());
    for (const auto& item : plan.items) plan.inpaint_core |= item.buffered;
    for (const auto& decoy : plan.decoys) plan.inpaint_core |= decoy;
    plan.inpaint = feather(plan.inpaint_core, plan.config.feather_px);
    plan.change = ChangeMap::between(real, plan.planned, plan.class_count);
}

void apply_item(SemanticMap& working, const ChangeItem& item) {
    for (std::size_t i = 0; i < working.size(); ++i) {
        if (item.change[i]) working[i] = item.to_class;
    }
}

} // namespace

ChangePlan make_plan(const PlanInput& input, const PlannerConfig& config, int variant, std::uint64_t seed) {
    const SemanticMap& real = input.semantic;
    const int width = real.width();
    const int height = real.height();
    const int k = input.classes.size();
    if (input.stats.class_count() != k) throw ConfigError("class statistics do not match the class table");
    real.check_labels(k);

    ChangePlan plan;
    plan.tile_id = input.meta.tile_id;
    plan.variant = variant;
    plan.seed = seed;
    plan.class_count = k;
    plan.config = config;

    const CounterRng root(seed);
    CounterRng budget_rng = root.split("budget");
    CounterRng select_rng = root.split("select");
    CounterRng class_rng = root.split("new-class");
    CounterRng decoy_rng = root.split("decoys");

    const int n = static_cast<int>(input.footprints.size());
    plan.budget = sample_budget(n, budget_rng);

    // Uniform selection without replacement: partial Fisher-Yates.
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < plan.budget.changes; ++i) {
        const auto j = i + static_cast<int>(select_rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(order[i], order[j]);
    }

    plan.planned = real;
    for (int s = 0; s < plan.budget.changes; ++s) {
        const InstanceFootprint& fp = input.footprints[order[s]];
        try {
            ChangeItem item;
            item.instance_id = fp.id;
            item.footprint = rasterize_polygon(fp.polygon, input.meta.geo, width, height);
            if (!item.footprint.any()) throw EmptyMaskError("footprint covers no pixel center of the tile");
            item.buffered = dilate(item.footprint, config.buffer_px);
            item.from_class = modal_class(plan.planned, item.footprint);
            item.change = build_change_mask(plan.planned, item.footprint, item.buffered, item.from_class);
            item.to_class = pick_new_class(input.stats, plan.planned, item.change, item.from_class, class_rng);
            apply_item(plan.planned, item);
            plan.items.push_back(std::move(item));
        } catch (const Error& e) {
            plan.skipped.push_back({fp.id, e.what()});
        }
    }

    plan.decoys = sample_decoys(plan.budget.decoys, width, height, decoy_rng);
    finish_plan(plan, real);

    plan.prompt_spec.locality = input.meta.locality;
    plan.prompt_spec.region = input.meta.region;
    apply_acquisition_time(plan.prompt_spec, input.meta.acquired);
    for (const ClassId c : salient_classes(plan.planned, plan.inpaint_core, input.stats, config.tau)) {
        plan.prompt_spec.semantic.push_back(input.classes[c].name);
    }
    plan.prompt = render_prompt(plan.prompt_spec);
    return plan;
}

nlohmann::json to_json(const ChangePlan& plan) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& item : plan.items) {
        items.push_back({{"instance_id", item.instance_id},
                         {"c1", item.from_class},
                         {"c2", item.to_class},
                         {"footprint_rle", rle_encode(item.footprint)},
                         {"buffered_rle", rle_encode(item.buffered)},
                         {"change_rle", rle_encode(item.change)}});
    }
    nlohmann::json skipped = nlohmann::json::array();
    for (const auto& s : plan.skipped) skipped.push_back({{"instance_id", s.instance_id}, {"reason", s.reason}});
    nlohmann::json decoys = nlohmann::json::array();
    for (const auto& d : plan.decoys) decoys.push_back(rle_encode(d));
    return {{"tile_id", plan.tile_id},
            {"variant", plan.variant},
            {"seed", plan.seed},
            {"width", plan.planned.width()},
            {"height", plan.planned.height()},
            {"class_count", plan.class_count},
            {"config", to_json(plan.config)},
            {"budget",
             {{"available", plan.budget.available},
              {"n_change", plan.budget.changes},
              {"n_nochange", plan.budget.decoys}}},
            {"items", items},
            {"skipped", skipped},
            {"decoys", decoys},
            {"prompt", plan.prompt},
            {"prompt_parts",
             {{"locality", plan.prompt_spec.locality},
              {"region", plan.prompt_spec.region},
              {"time_of_day", plan.prompt_spec.time_of_day},
              {"season", plan.prompt_spec.season},
              {"semantic", plan.prompt_spec.semantic}}}};
}

ChangePlan plan_from_json(const nlohmann::json& j, const SemanticMap& real) {
    try {
        ChangePlan plan;
        plan.tile_id = j.at("tile_id").get<std::string>();
        plan.variant = j.at("variant").get<int>();
        plan.seed = j.at("seed").get<std::uint64_t>();
        plan.class_count = j.at("class_count").get<int>();
        const int width = j.at("width").get<int>();
        const int height = j.at("height").get<int>();
        if (width != real.width() || height != real.height()) {
            throw FormatError("plan dimensions do not match the real semantic map");
        }
        plan.config = planner_config_from_json(j.at("config"));
        const auto& b = j.at("budget");
        plan.budget = {b.at("available").get<int>(), b.at("n_change").get<int>(), b.at("n_nochange").get<int>()};
        plan.planned = real;
        for (const auto& it : j.at("items")) {
            ChangeItem item;
            item.instance_id = it.at("instance_id").get<std::string>();
            item.from_class = it.at("c1").get<ClassId>();
            item.to_class = it.at("c2").get<ClassId>();
            item.footprint = rle_decode(it.at("footprint_rle").get<std::vector<std::uint32_t>>(), width, height);
            item.buffered = rle_decode(it.at("buffered_rle").get<std::vector<std::uint32_t>>(), width, height);
            item.change = rle_decode(it.at("change_rle").get<std::vector<std::uint32_t>>(), width, height);
            apply_item(plan.planned, item);
            plan.items.push_back(std::move(item));
        }
        for (const auto& s : j.at("skipped")) {
            plan.skipped.push_back({s.at("instance_id").get<std::string>(), s.at("reason").get<std::string>()});
        }
        for (const auto& d : j.at("decoys")) {
            plan.decoys.push_back(rle_decode(d.get<std::vector<std::uint32_t>>(), width, height));
        }
        plan.prompt = j.at("prompt").get<std::string>();
        const auto& parts = j.at("prompt_parts");
        plan.prompt_spec.locality = parts.value("locality", std::string());
        plan.prompt_spec.region = parts.value("region", std::string());
        plan.prompt_spec.time_of_day = parts.value("time_of_day", std::string());
        plan.prompt_spec.season = parts.value("season", std::string());
        plan.prompt_spec.semantic = parts.value("semantic", std::vector<std::string>{});
        finish_plan(plan, real);
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed plan: ") + e.what());
    }
}

} // namespace hyscdg
