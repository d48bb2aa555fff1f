#include "hyscdg/manifest.hpp"

#include "hyscdg/raster_io.hpp"
#include "hyscdg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hyscdg {

std::string to_string(Scenario s) {
    switch (s) {
    case Scenario::Sequential: return "sequential";
    case Scenario::LowData: return "low-data";
    case Scenario::Mixed: return "mixed";
    case Scenario::ZeroShot: return "zero-shot";
    }
    return "unknown";
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "sequential") return Scenario::Sequential;
    if (s == "low-data") return Scenario::LowData;
    if (s == "mixed") return Scenario::Mixed;
    if (s == "zero-shot") return Scenario::ZeroShot;
    throw ConfigError("unknown scenario '" + s + "' (sequential, low-data, mixed, zero-shot)");
}

std::size_t Manifest::count(Origin origin) const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [&](const ManifestEntry& e) { return e.origin == origin; }));
}

namespace {

template <class T>
void shuffle(std::vector<T>& v, CounterRng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(v[i - 1], v[j]);
    }
}

/// `count` picks from `ids`: a partial Fisher-Yates when count <= |ids|, else i.i.d. draws.
std::vector<std::string> draw(const std::vector<std::string>& ids, std::size_t count, CounterRng& rng) {
    std::vector<std::string> out;
    out.reserve(count);
    if (count <= ids.size()) {
        std::vector<std::size_t> idx(ids.size());
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + rng.below(ids.size() - i);
            std::swap(idx[i], idx[j]);
            out.push_back(ids[idx[i]]);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) out.push_back(ids[rng.below(ids.size())]);
    }
    return out;
}

void append(Manifest& m, const std::vector<std::string>& ids, Origin origin) {
    for (const auto& id : ids) m.entries.push_back({id, origin});
}

} // namespace

Manifest subsample(const std::vector<std::string>& target, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction <= 100.0)) throw ConfigError("fraction must be in (0, 100]");
    const double exact = fraction * static_cast<double>(target.size()) / 100.0;
    const auto n = static_cast<std::size_t>(std::ceil(exact - 1e-9));
    if (n == 0) throw ConfigError("fraction yields no sample");
    Manifest m;
    m.spec.scenario = Scenario::LowData;
    m.spec.percent = fraction;
    m.spec.seed = seed;
    m.spec.epoch_length = n;
    CounterRng rng = CounterRng(seed).split("subsample");
    append(m, draw(target, n, rng), Origin::Target);
    return m;
}

std::size_t mix_target_count(double ratio, std::size_t epoch_length) {
    return static_cast<std::size_t>(std::floor(ratio * static_cast<double>(epoch_length) / 100.0 + 0.5));
}

Manifest mix(const std::vector<std::string>& target, const std::vector<std::string>& source, double ratio,
             std::size_t epoch_length, std::uint64_t seed) {
    if (!(ratio >= 0.0 && ratio <= 100.0)) throw ConfigError("ratio must be in [0, 100]");
    if (epoch_length < 1) throw ConfigError("epoch length must be at least 1");
    const std::size_t nt = mix_target_count(ratio, epoch_length);
    const std::size_t ns = epoch_length - nt;
    if (nt > 0 && target.empty()) throw ConfigError("mixed manifest needs target samples but the target is empty");
    if (ns > 0 && source.empty()) throw ConfigError("mixed manifest needs source samples but the source is empty");
    Manifest m;
    m.spec.scenario = Scenario::Mixed;
    m.spec.percent = ratio;
    m.spec.epoch_length = epoch_length;
    m.spec.repetitions = nt > target.size() || ns > source.size();
    m.spec.seed = seed;
    const CounterRng root(seed);
    CounterRng target_rng = root.split("mix-target");
    CounterRng source_rng = root.split("mix-source");
    CounterRng order_rng = root.split("mix-order");
    append(m, draw(target, nt, target_rng), Origin::Target);
    append(m, draw(source, ns, source_rng), Origin::Source);
    shuffle(m.entries, order_rng);
    return m;
}

Manifest sequential(const std::vector<std::string>& source, const std::vector<std::string>& target,
                    std::uint64_t seed) {
    Manifest m;
    m.spec.scenario = Scenario::Sequential;
    m.spec.seed = seed;
    m.spec.epoch_length = source.size() + target.size();
    const CounterRng root(seed);
    CounterRng source_rng = root.split("sequential-source");
    CounterRng target_rng = root.split("sequential-target");
    append(m, draw(source, source.size(), source_rng), Origin::Source);
    append(m, draw(target, target.size(), target_rng), Origin::Target);
    return m;
}

Manifest zero_shot(const std::vector<std::string>& source, std::uint64_t seed) {
    Manifest m;
    m.spec.scenario = Scenario::ZeroShot;
    m.spec.seed = seed;
    m.spec.epoch_length = source.size();
    CounterRng rng = CounterRng(seed).split("zero-shot");
    append(m, draw(source, source.size(), rng), Origin::Source);
    return m;
}

nlohmann::json to_json(const Manifest& m) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : m.entries) {
        entries.push_back({{"pair_id", e.pair_id}, {"origin", e.origin == Origin::Target ? "target" : "source"}});
    }
    nlohmann::json spec = {{"scenario", to_string(m.spec.scenario)},
                           {"target", m.spec.target_id},
                           {"source", m.spec.source_id},
                           {"percent", m.spec.percent},
                           {"repetitions", m.spec.repetitions},
                           {"seed", m.spec.seed}};
    if (!m.spec.remap.is_null()) spec["remap"] = m.spec.remap;
    return {{"spec", spec},
            {"epoch_length", m.spec.epoch_length},
            {"seed", m.spec.seed},
            {"counts", {{"target", m.count(Origin::Target)}, {"source", m.count(Origin::Source)}}},
            {"entries", entries}};
}

RemapTable RemapTable::from_json(const nlohmann::json& j) {
    RemapTable t;
    int max_old = -1, max_new = -1;
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> dropped;
    try {
        for (const auto& [key, value] : j.at("map").items()) {
            std::size_t used = 0;
            const int old_id = std::stoi(key, &used);
            if (used != key.size()) throw ConfigError("remap key '" + key + "' is not an integer");
            pairs.emplace_back(old_id, value.get<int>());
        }
        if (j.contains("drop")) dropped = j["drop"].get<std::vector<int>>();
        if (j.contains("new_class_table")) {
            const auto& nt = j["new_class_table"];
            t.target_table_ = ClassTable::from_json(nt.is_array() ? nlohmann::json{{"classes", nt}} : nt);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed remap table: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ConfigError("remap keys must be class ids");
    } catch (const std::out_of_range&) {
        throw ConfigError("remap key out of range");
    }
    for (const auto& [o, n] : pairs) {
        if (o < 0 || o >= kIgnoreLabel || n < 0 || n >= kIgnoreLabel) {
            throw ConfigError("remap ids must be in [0, 254]");
        }
        max_old = std::max(max_old, o);
        max_new = std::max(max_new, n);
    }
    for (const int d : dropped) {
        if (d < 0 || d >= kIgnoreLabel) throw ConfigError("dropped ids must be in [0, 254]");
        max_old = std::max(max_old, d);
    }
    t.table_.assign(static_cast<std::size_t>(max_old + 1), -1);
    for (const auto& [o, n] : pairs) t.table_[static_cast<std::size_t>(o)] = n;
    for (const int d : dropped) {
        if (t.table_[static_cast<std::size_t>(d)] >= 0) {
            throw ConfigError("class " + std::to_string(d) + " is both mapped and dropped");
        }
        t.table_[static_cast<std::size_t>(d)] = -2;
    }
    t.target_count_ = t.target_table_ ? t.target_table_->size() : max_new + 1;
    if (max_new >= t.target_count_) throw ConfigError("remap target id exceeds the new class table");
    return t;
}

RemapTable RemapTable::load(const std::filesystem::path& path) { return from_json(read_json(path)); }

RemapTable RemapTable::identity(int class_count) {
    RemapTable t;
    t.table_.resize(static_cast<std::size_t>(class_count));
    std::iota(t.table_.begin(), t.table_.end(), 0);
    t.target_count_ = class_count;
    return t;
}

void RemapTable::require_total(int source_count) const {
    for (int c = 0; c < source_count; ++c) {
        if (c >= static_cast<int>(table_.size()) || table_[static_cast<std::size_t>(c)] == -1) {
            throw ConfigError("remap table does not map or drop class " + std::to_string(c));
        }
    }
}

ClassId RemapTable::apply(ClassId c) const {
    const int v = c < table_.size() ? table_[c] : -1;
    if (v == -1) throw LabelError("class " + std::to_string(c) + " has no remap entry");
    return v == -2 ? kIgnoreLabel : static_cast<ClassId>(v);
}

nlohmann::json RemapTable::to_json() const {
    nlohmann::json map = nlohmann::json::object();
    nlohmann::json drop = nlohmann::json::array();
    for (std::size_t c = 0; c < table_.size(); ++c) {
        if (table_[c] >= 0) map[std::to_string(c)] = table_[c];
        if (table_[c] == -2) drop.push_back(c);
    }
    nlohmann::json j = {{"map", map}, {"drop", drop}};
    if (target_table_) j["new_class_table"] = target_table_->to_json()["classes"];
    return j;
}

SemanticMap remap_semantic(const SemanticMap& map, const RemapTable& table) {
    SemanticMap out(map.width(), map.height());
    for (std::size_t i = 0; i < map.size(); ++i) out[i] = table.apply(map[i]);
    return out;
}

RemappedPair remap_pair(const SemanticMap& first, const SemanticMap& second, const RemapTable& table) {
    if (!first.same_shape(second)) throw Error("semantic maps differ in size");
    RemappedPair r{remap_semantic(first, table), remap_semantic(second, table),
                   ChangeMap(first.width(), first.height()), BitMask(first.width(), first.height())};
    const int k = table.target_count();
    for (std::size_t i = 0; i < first.size(); ++i) {
        const ClassId a = r.first[i], b = r.second[i];
        const bool ok = a != kIgnoreLabel && b != kIgnoreLabel;
        r.valid[i] = ok ? 1 : 0;
        r.change[i] = ok && a != b ? ChangeMap::encode(a, b, k) : 0;
    }
    return r;
}

std::pair<ChangeMap, BitMask> remap_change(const ChangeMap& change, int source_count, const RemapTable& table) {
    ChangeMap out(change.width(), change.height());
    BitMask valid(change.width(), change.height());
    const int k = table.target_count();
    const int codes = source_count * source_count + 1;
    for (std::size_t i = 0; i < change.size(); ++i) {
        valid[i] = 1;
        if (change[i] == 0) continue;
        if (change[i] >= codes) throw LabelError("change code " + std::to_string(change[i]) + " out of range");
        const auto [c1, c2] = ChangeMap::decode(change[i], source_count);
        const ClassId a = table.apply(c1), b = table.apply(c2);
        if (a == kIgnoreLabel || b == kIgnoreLabel) {
            valid[i] = 0;
        } else if (a != b) {
            out[i] = ChangeMap::encode(a, b, k);
        }
    }
    return {std::move(out), std::move(valid)};
}

} // namespace hyscdg
