#include "hyscdg/dataset.hpp"

#include "hyscdg/rng.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

namespace hyscdg {

namespace fs = std::filesystem;

SourceDataset SourceDataset::open(const fs::path& root, double min_footprint_area,
                                  const std::optional<fs::path>& class_table) {
    if (!fs::is_directory(root)) throw IoError("source dataset " + root.string() + " is not a directory");
    ClassTable classes = ClassTable::flair16();
    if (class_table) {
        classes = ClassTable::load(*class_table);
    } else if (fs::exists(root / "class_table.json")) {
        classes = ClassTable::load(root / "class_table.json");
    }
    SourceDataset ds(root, std::move(classes));
    const fs::path tiles = root / "tiles";
    if (!fs::is_directory(tiles)) throw IoError("source dataset has no tiles/ directory: " + tiles.string());
    for (const auto& entry : fs::directory_iterator(tiles)) {
        if (entry.is_directory()) ds.tile_ids_.push_back(entry.path().filename().string());
    }
    std::sort(ds.tile_ids_.begin(), ds.tile_ids_.end());
    const fs::path footprints = root / "footprints.geojson";
    if (fs::exists(footprints)) {
        FootprintLoadReport report = load_footprints(footprints, min_footprint_area);
        ds.degenerate_ = report.degenerate_dropped;
        ds.footprint_errors_ = std::move(report.feature_errors);
        ds.instances_ = InstanceStore(std::move(report.footprints));
    }
    return ds;
}

TileBundle SourceDataset::load_tile(const std::string& tile_id) const {
    TileBundle b = load_tile_dir(root_ / "tiles" / tile_id);
    if (b.meta.tile_id.empty()) b.meta.tile_id = tile_id;
    b.semantic.check_labels(classes_.size());
    return b;
}

std::vector<InstanceFootprint> SourceDataset::footprints_for(const TileBundle& tile) const {
    return instances_.query(tile.meta.geo.extent(tile.semantic.width(), tile.semantic.height()));
}

ClassStats compute_class_stats(const SourceDataset& source) {
    ClassStats stats(source.classes().size());
    for (const auto& id : source.tile_ids()) {
        stats = accumulate_stats(std::move(stats), read_semantic(source.root() / "tiles" / id / "semantic.png"));
    }
    return stats;
}

std::vector<VariantOutput> generate_variants(const TileBundle& tile, const std::vector<InstanceFootprint>& footprints,
                                             const ClassStats& stats, const ClassTable& classes,
                                             InpaintBackend* backend, const PlannerConfig& config,
                                             std::uint64_t master_seed) {
    if (config.variants < 1) throw ConfigError("variant count must be at least 1");
    const PlanInput input{tile.meta, tile.semantic, footprints, stats, classes};
    std::vector<VariantOutput> out;
    for (int v = 0; v < config.variants; ++v) {
        VariantOutput vo;
        vo.variant = v;
        vo.seed = derive_plan_seed(master_seed, tile.meta.tile_id, v);
        try {
            vo.plan = make_plan(input, config, v, vo.seed);
            if (backend) {
                InpaintRequest req;
                req.tile_id = tile.meta.tile_id;
                req.variant = v;
                req.seed = vo.seed;
                req.prompt = vo.plan->prompt;
                req.image = tile.image;
                req.mask = vo.plan->inpaint;
                req.condition = render_condition_map(vo.plan->planned, classes);
                InpaintResult result = inpaint(*backend, req);
                vo.image = std::move(result.image);
                vo.backend = result.backend + "/" + result.version;
            }
        } catch (const std::exception& e) {
            vo.error = e.what();
            if (vo.error.empty()) vo.error = "unknown error";
        }
        out.push_back(std::move(vo));
    }
    return out;
}

namespace {

std::string variant_dir(int k) { return "v" + std::to_string(k); }

} // namespace

void write_tile_outputs(const fs::path& out, const TileBundle& tile, const std::vector<VariantOutput>& variants,
                        const ClassTable& classes) {
    const fs::path dir = out / tile.meta.tile_id;
    fs::remove(dir / "tile.json");
    fs::create_directories(dir / "real");
    write_geotiff(dir / "real" / "image.tif", tile.image);
    write_semantic(dir / "real" / "semantic.png", tile.semantic);
    write_json(dir / "real" / "meta.json", to_json(tile.meta));

    nlohmann::json records = nlohmann::json::array();
    for (const auto& v : variants) {
        const fs::path vdir = dir / variant_dir(v.variant);
        fs::remove_all(vdir);
        fs::create_directories(vdir);
        if (v.plan) write_json(vdir / "plan.json", to_json(*v.plan));
        if (v.ok()) {
            if (v.image) write_geotiff(vdir / "image.tif", *v.image);
            write_semantic(vdir / "semantic.png", v.plan->planned);
            write_change(vdir / "change_vs_real.png", v.plan->change);
            write_soft_mask(vdir / "inpaint_mask.png", v.plan->inpaint);
            write_png_rgb(vdir / "condition.png", render_condition_map(v.plan->planned, classes));
        } else {
            write_json(vdir / "failed.json",
                       {{"tile_id", tile.meta.tile_id}, {"variant", v.variant}, {"seed", v.seed}, {"error", v.error}});
        }
        records.push_back({{"variant", v.variant},
                           {"seed", v.seed},
                           {"status", v.ok() ? "ok" : "failed"},
                           {"backend", v.backend}});
    }
    fs::remove_all(dir / "siblings");
    write_json(dir / "tile.json", {{"tile_id", tile.meta.tile_id}, {"class_table", classes.id()}, {"variants", records}});
}

void write_plan_files(const fs::path& out, const std::string& tile_id, const std::vector<VariantOutput>& variants) {
    const fs::path dir = out / "plans";
    fs::create_directories(dir);
    for (const auto& v : variants) {
        const fs::path path = dir / (tile_id + "_" + variant_dir(v.variant) + ".json");
        if (v.plan) {
            write_json(path, to_json(*v.plan));
        } else {
            write_json(path, {{"tile_id", tile_id}, {"variant", v.variant}, {"seed", v.seed}, {"error", v.error}});
        }
    }
}

ChangeMap sibling_change(const VariantRecord& first, const VariantRecord& second, int class_count) {
    return ChangeMap::between(first.planned, second.planned, class_count);
}

std::vector<SamplePair> expand_pairs(const std::string& tile_id, const std::vector<VariantRecord>& variants,
                                     bool siblings) {
    const auto ref = [&](int k) -> RasterRef {
        const std::string d = tile_id + "/" + (k < 0 ? std::string("real") : variant_dir(k));
        return {d + "/image.tif", d + "/semantic.png"};
    };
    std::vector<SamplePair> pairs;
    for (const auto& v : variants) {
        SamplePair p;
        p.pair_id = tile_id + "/real-" + variant_dir(v.variant);
        p.tile_id = tile_id;
        p.provenance = Provenance::RealSynth;
        p.first_variant = -1;
        p.second_variant = v.variant;
        p.first = ref(-1);
        p.second = ref(v.variant);
        p.change = tile_id + "/" + variant_dir(v.variant) + "/change_vs_real.png";
        p.seeds = {v.seed};
        pairs.push_back(std::move(p));
    }
    if (!siblings) return pairs;
    for (std::size_t a = 0; a < variants.size(); ++a) {
        for (std::size_t b = a + 1; b < variants.size(); ++b) {
            const int j = variants[a].variant, k = variants[b].variant;
            SamplePair p;
            p.pair_id = tile_id + "/" + variant_dir(j) + "-" + variant_dir(k);
            p.tile_id = tile_id;
            p.provenance = Provenance::SynthSynth;
            p.first_variant = j;
            p.second_variant = k;
            p.first = ref(j);
            p.second = ref(k);
            p.change = tile_id + "/siblings/change_" + variant_dir(j) + "_" + variant_dir(k) + ".png";
            p.seeds = {variants[a].seed, variants[b].seed};
            pairs.push_back(std::move(p));
        }
    }
    return pairs;
}

double consistency_rate(const SemanticMap& planned, const SemanticMap& segmentation, const BitMask& core) {
    if (!planned.same_shape(segmentation) || !planned.same_shape(core)) {
        throw Error("consistency check needs maps of equal size");
    }
    std::size_t n = 0, bad = 0;
    for (std::size_t i = 0; i < core.size(); ++i) {
        if (!core[i]) continue;
        ++n;
        bad += planned[i] != segmentation[i];
    }
    return n == 0 ? 0.0 : static_cast<double>(bad) / static_cast<double>(n);
}

void BandMoments::add(std::span<const std::uint8_t> values) noexcept {
    for (const std::uint8_t v : values) {
        sum += v;
        sum_sq += static_cast<unsigned>(v) * v;
    }
    count += values.size();
}

double BandMoments::mean() const noexcept {
    return count == 0 ? 0.0 : static_cast<double>(sum) / static_cast<double>(count);
}

double BandMoments::variance() const noexcept {
    if (count == 0) return 0.0;
    // (n * sum_sq - sum^2) / n^2, exact numerator
    const unsigned __int128 n = count;
    const unsigned __int128 s = sum;
    const unsigned __int128 num = n * sum_sq - s * s;
    return static_cast<double>(num) / (static_cast<double>(count) * static_cast<double>(count));
}

double DatasetIndex::prevalence_percent() const noexcept {
    return pixel_count == 0 ? 0.0 : 100.0 * static_cast<double>(changed_pixels) / static_cast<double>(pixel_count);
}

std::string relative_ref(const fs::path& root, const fs::path& p) {
    return fs::relative(p, root).generic_string();
}

namespace {

struct TileScan {
    std::vector<VariantRecord> records;
    std::vector<SamplePair> pairs;
    std::vector<IndexFailure> failures;
    std::uint64_t pixels = 0;
    std::uint64_t changed = 0;
    std::vector<std::uint64_t> histogram;
    std::array<BandMoments, kBandCount> bands{};
    nlohmann::json consistency = nlohmann::json::array();
};

void add_histogram(std::vector<std::uint64_t>& h, const SemanticMap& m) {
    for (const ClassId c : m.values()) {
        if (c < h.size()) ++h[c];
    }
}

void add_bands(std::array<BandMoments, kBandCount>& bands, const RasterTile& image) {
    for (int b = 0; b < kBandCount; ++b) bands[static_cast<std::size_t>(b)].add(image.band(b));
}

TileScan scan_tile(const fs::path& out, const std::string& tile_id, const ClassTable& classes,
                   const AssembleOptions& options) {
    TileScan s;
    s.histogram.assign(static_cast<std::size_t>(classes.size()), 0);
    const fs::path dir = out / tile_id;
    const int k = classes.size();
    const auto fail = [&](int variant, std::string reason) { s.failures.push_back({tile_id, variant, std::move(reason)}); };

    nlohmann::json tile;
    SemanticMap real;
    try {
        tile = read_json(dir / "tile.json");
        real = read_semantic(dir / "real" / "semantic.png");
        real.check_labels(k);
        add_histogram(s.histogram, real);
        add_bands(s.bands, read_geotiff(dir / "real" / "image.tif"));
    } catch (const std::exception& e) {
        fail(-1, std::string("unreadable real tile: ") + e.what());
        return s;
    }

    std::vector<ChangeMap> real_changes;
    for (const auto& rec : tile.at("variants")) {
        const int v = rec.at("variant").get<int>();
        const fs::path vdir = dir / variant_dir(v);
        if (rec.at("status").get<std::string>() != "ok") {
            std::string reason = "variant failed";
            if (fs::exists(vdir / "failed.json")) {
                reason = read_json(vdir / "failed.json").value("error", reason);
            }
            fail(v, reason);
            continue;
        }
        try {
            const ChangePlan plan = plan_from_json(read_json(vdir / "plan.json"), real);
            const SemanticMap second = read_semantic(vdir / "semantic.png");
            const ChangeMap change = read_change(vdir / "change_vs_real.png");
            const RasterTile image = read_geotiff(vdir / "image.tif");
            if (!(second == plan.planned)) throw FormatError("semantic.png disagrees with plan.json");
            if (!(change == plan.change)) throw FormatError("change_vs_real.png disagrees with plan.json");
            if (image.width() != real.width() || image.height() != real.height()) {
                throw FormatError("image.tif has the wrong size");
            }
            add_histogram(s.histogram, second);
            add_bands(s.bands, image);
            if (options.segmentation_dir) {
                const fs::path seg = *options.segmentation_dir / tile_id / (variant_dir(v) + ".png");
                if (fs::exists(seg)) {
                    const double rate = consistency_rate(plan.planned, read_semantic(seg), plan.inpaint_core);
                    s.consistency.push_back({{"tile_id", tile_id},
                                             {"variant", v},
                                             {"error_rate", rate},
                                             {"pass", rate < kConsistencyThreshold}});
                }
            }
            s.records.push_back({v, plan.seed, plan.planned});
            real_changes.push_back(change);
        } catch (const std::exception& e) {
            fail(v, e.what());
        }
    }

    s.pairs = expand_pairs(tile_id, s.records, options.siblings);
    const std::size_t plane = real.size();
    for (const auto& c : real_changes) s.changed += c.changed_pixels();
    if (options.siblings && s.records.size() > 1) {
        fs::create_directories(dir / "siblings");
        for (std::size_t a = 0; a < s.records.size(); ++a) {
            for (std::size_t b = a + 1; b < s.records.size(); ++b) {
                const ChangeMap c = sibling_change(s.records[a], s.records[b], k);
                write_change(dir / "siblings" /
                                 ("change_" + variant_dir(s.records[a].variant) + "_" +
                                  variant_dir(s.records[b].variant) + ".png"),
                             c);
                s.changed += c.changed_pixels();
            }
        }
    }
    s.pixels = plane * s.pairs.size();
    return s;
}

} // namespace

DatasetIndex assemble(const fs::path& out, const ClassTable& classes, const AssembleOptions& options) {
    if (!fs::is_directory(out)) throw IoError("output root " + out.string() + " is not a directory");
    DatasetIndex index;
    index.class_table_id = classes.id();
    index.class_count = classes.size();
    index.class_histogram.assign(static_cast<std::size_t>(classes.size()), 0);

    std::vector<std::string> tiles;
    for (const auto& entry : fs::directory_iterator(out)) {
        if (entry.is_directory() && fs::is_directory(entry.path() / "real")) {
            tiles.push_back(entry.path().filename().string());
        }
    }
    std::sort(tiles.begin(), tiles.end());
    for (const auto& tile_id : tiles) {
        if (!fs::exists(out / tile_id / "tile.json")) {
            index.failures.push_back({tile_id, -1, "incomplete tile (no tile.json)"});
            continue;
        }
        TileScan s = scan_tile(out, tile_id, classes, options);
        for (auto& p : s.pairs) index.pairs.push_back(std::move(p));
        for (auto& f : s.failures) index.failures.push_back(std::move(f));
        index.pixel_count += s.pixels;
        index.changed_pixels += s.changed;
        for (std::size_t c = 0; c < index.class_histogram.size(); ++c) index.class_histogram[c] += s.histogram[c];
        for (std::size_t b = 0; b < index.bands.size(); ++b) {
            index.bands[b].count += s.bands[b].count;
            index.bands[b].sum += s.bands[b].sum;
            index.bands[b].sum_sq += s.bands[b].sum_sq;
        }
        for (auto& c : s.consistency) index.consistency.push_back(std::move(c));
    }
    return index;
}

nlohmann::json to_json(const DatasetIndex& index) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : index.pairs) {
        pairs.push_back({{"pair_id", p.pair_id},
                         {"tile_id", p.tile_id},
                         {"provenance", p.provenance == Provenance::RealSynth ? "real-synth" : "synth-synth"},
                         {"first", {{"variant", p.first_variant}, {"image", p.first.image}, {"semantic", p.first.semantic}}},
                         {"second",
                          {{"variant", p.second_variant}, {"image", p.second.image}, {"semantic", p.second.semantic}}},
                         {"change", p.change},
                         {"seeds", p.seeds}});
    }
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : index.failures) {
        failures.push_back({{"tile_id", f.tile_id}, {"variant", f.variant}, {"reason", f.reason}});
    }
    nlohmann::json mean = nlohmann::json::array(), variance = nlohmann::json::array();
    for (const auto& b : index.bands) {
        mean.push_back(b.mean());
        variance.push_back(b.variance());
    }
    return {{"class_table", index.class_table_id},
            {"class_count", index.class_count},
            {"pairs", pairs},
            {"failures", failures},
            {"consistency", index.consistency},
            {"stats",
             {{"pairs", index.pairs.size()},
              {"pixel_count", index.pixel_count},
              {"changed_pixels", index.changed_pixels},
              {"change_prevalence_pct", index.prevalence_percent()},
              {"class_histogram", index.class_histogram},
              {"band_mean", mean},
              {"band_variance", variance}}}};
}

std::size_t parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn,
                         const std::atomic<bool>* stop) {
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto worker = [&] {
        for (;;) {
            if (stop && stop->load()) return;
            {
                std::lock_guard lock(error_mutex);
                if (error) return;
            }
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
                ++done;
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    const int threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
    return done.load();
}

} // namespace hyscdg
