#include "hyscdg/cli.hpp"

#include "hyscdg/dataset.hpp"
#include "hyscdg/fixture.hpp"
#include "hyscdg/manifest.hpp"
#include "hyscdg/metrics.hpp"
#include "hyscdg/remote_backend.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <toml.hpp>

namespace hyscdg {

namespace fs = std::filesystem;

namespace {

/// Flag values; unset flags fall back to the config file, then to defaults.
struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> source;
    std::optional<std::string> out;
    std::optional<std::string> backend;
    std::optional<std::string> url;
    std::optional<int> variants;
    std::optional<std::uint64_t> seed;
    std::optional<double> buffer_px;
    std::optional<double> feather_px;
    std::optional<int> jobs;
    std::optional<double> tau;
    std::optional<std::string> class_table;
    std::optional<double> min_area;
};

struct RunConfig {
    std::optional<fs::path> source;
    std::optional<fs::path> out;
    std::string backend = "procedural";
    std::string url;
    std::uint64_t seed = 1;
    int jobs = 1;
    PlannerConfig planner;
    std::optional<fs::path> class_table;
    double min_area = 0.0;
};

template <class T>
std::optional<T> file_value(const toml::table* file, const char* key) {
    if (!file) return std::nullopt;
    if (const auto v = (*file)[key].value<T>()) return *v;
    return std::nullopt;
}

template <class T, class F = T>
T pick(const std::optional<T>& flag, const toml::table* file, const char* key, T fallback) {
    if (flag) return *flag;
    if (const auto v = file_value<F>(file, key)) return static_cast<T>(*v);
    return fallback;
}

RunConfig resolve(const Flags& f) {
    std::optional<toml::table> table;
    std::optional<fs::path> config_path;
    if (f.config) {
        config_path = *f.config;
    } else if (fs::exists("hyscdg.toml")) {
        config_path = "hyscdg.toml";
    }
    if (config_path) {
        try {
            table = toml::parse_file(config_path->string());
        } catch (const toml::parse_error& e) {
            throw ConfigError("cannot parse " + config_path->string() + ": " + std::string(e.description()));
        }
    }
    const toml::table* file = table ? &*table : nullptr;

    RunConfig c;
    if (auto s = pick<std::string>(f.source, file, "source", ""); !s.empty()) c.source = s;
    if (auto s = pick<std::string>(f.out, file, "out", ""); !s.empty()) c.out = s;
    if (auto s = pick<std::string>(f.class_table, file, "class_table", ""); !s.empty()) c.class_table = s;
    c.backend = pick<std::string>(f.backend, file, "backend", c.backend);
    c.url = pick<std::string>(f.url, file, "url", "");
    if (c.url.empty()) {
        if (const char* env = std::getenv("HYSCDG_BACKEND_URL")) c.url = env;
    }
    c.seed = pick<std::uint64_t, std::int64_t>(f.seed, file, "seed", c.seed);
    const int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    c.jobs = pick<int, std::int64_t>(f.jobs, file, "jobs", hw);
    c.planner.variants = pick<int, std::int64_t>(f.variants, file, "variants", c.planner.variants);
    c.planner.buffer_px = pick<double>(f.buffer_px, file, "buffer_px", c.planner.buffer_px);
    c.planner.feather_px = pick<double>(f.feather_px, file, "feather_px", c.planner.feather_px);
    c.planner.tau = pick<double>(f.tau, file, "tau", c.planner.tau);
    c.min_area = pick<double>(f.min_area, file, "min_area", c.min_area);

    if (c.planner.variants < 1) throw ConfigError("--variants must be at least 1");
    if (c.jobs < 1) throw ConfigError("--jobs must be at least 1");
    if (c.planner.buffer_px < 0 || c.planner.feather_px < 0) throw ConfigError("buffer and feather must be >= 0");
    if (!(c.planner.tau > 0)) throw ConfigError("--tau must be positive");
    if (c.backend != "procedural" && c.backend != "remote") {
        throw ConfigError("--backend must be 'procedural' or 'remote'");
    }
    return c;
}

fs::path require_dir(const std::optional<fs::path>& p, const char* flag) {
    if (!p) throw ConfigError(std::string(flag) + " is required");
    if (!fs::is_directory(*p)) throw IoError(std::string(flag) + " " + p->string() + " is not a directory");
    return *p;
}

fs::path require_out(const std::optional<fs::path>& p) {
    if (!p) throw ConfigError("--out is required");
    fs::create_directories(*p);
    return *p;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0') << ms << 'Z';
    return os.str();
}

/// Append-only `run.log.jsonl`; the only output carrying timestamps.
class RunLog {
public:
    explicit RunLog(const fs::path& out) : stream_(out / "run.log.jsonl", std::ios::app) {}

    void event(const std::string& name, nlohmann::json fields = nlohmann::json::object()) {
        fields["ts"] = utc_now();
        fields["event"] = name;
        std::lock_guard lock(mutex_);
        stream_ << fields.dump() << '\n';
        stream_.flush();
    }

private:
    std::mutex mutex_;
    std::ofstream stream_;
};

ClassTable output_class_table(const fs::path& out, const RunConfig& c) {
    if (c.class_table) return ClassTable::load(*c.class_table);
    if (fs::exists(out / "class_table.json")) return ClassTable::load(out / "class_table.json");
    return ClassTable::flair16();
}

nlohmann::json config_echo(const RunConfig& c) {
    return {{"master_seed", c.seed}, {"backend", c.backend}, {"planner", to_json(c.planner)}, {"min_area", c.min_area}};
}

int cmd_stats(const RunConfig& c, std::ostream& out) {
    const SourceDataset src = SourceDataset::open(require_dir(c.source, "--source"), c.min_area, c.class_table);
    const fs::path dir = require_out(c.out);
    const ClassStats stats = compute_class_stats(src);
    write_json(dir / "class_stats.json", stats.to_json(src.classes().id(), src.root().filename().string()));
    out << "class_stats.json: " << src.tile_ids().size() << " tiles, " << stats.total() << " pixels\n";
    return exit_code::kOk;
}

/// Shared driver of `plan` and `generate`.
int run_generation(const RunConfig& c, bool plan_only, std::ostream& out, std::ostream& err,
                   const std::atomic<bool>* stop) {
    const SourceDataset src = SourceDataset::open(require_dir(c.source, "--source"), c.min_area, c.class_table);
    const fs::path dir = require_out(c.out);
    RunLog log(dir);
    const std::string command = plan_only ? "plan" : "generate";
    log.event("start", {{"command", command}, {"config", config_echo(c)}, {"tiles", src.tile_ids().size()}});
    for (const auto& e : src.footprint_errors()) log.event("footprint-error", {{"message", e}});

    const ClassStats stats = compute_class_stats(src);
    write_json(dir / "class_stats.json", stats.to_json(src.classes().id(), src.root().filename().string()));
    write_json(dir / "class_table.json", src.classes().to_json());
    if (!plan_only) write_json(dir / "generate.json", config_echo(c));

    std::unique_ptr<InpaintBackend> backend;
    if (!plan_only) {
        if (c.backend == "remote") {
            if (c.url.empty()) throw ConfigError("--backend remote needs --url or HYSCDG_BACKEND_URL");
            backend = std::make_unique<RemoteBackend>(RemoteConfig{c.url});
        } else {
            backend = std::make_unique<ProceduralBackend>(src.classes());
        }
    }

    std::atomic<std::size_t> failed_variants{0}, failed_tiles{0};
    const auto& ids = src.tile_ids();
    const std::size_t processed = parallel_for(
        ids.size(), c.jobs,
        [&](std::size_t i) {
            const std::string& id = ids[i];
            try {
                const TileBundle tile = src.load_tile(id);
                const auto variants = generate_variants(tile, src.footprints_for(tile), stats, src.classes(),
                                                        backend.get(), c.planner, c.seed);
                if (plan_only) {
                    write_plan_files(dir, id, variants);
                } else {
                    write_tile_outputs(dir, tile, variants, src.classes());
                }
                for (const auto& v : variants) {
                    if (!v.ok()) {
                        ++failed_variants;
                        log.event("variant-failed", {{"tile_id", id}, {"variant", v.variant}, {"error", v.error}});
                    }
                }
                log.event("tile-done", {{"tile_id", id}});
            } catch (const std::exception& e) {
                ++failed_tiles;
                log.event("tile-failed", {{"tile_id", id}, {"error", e.what()}});
                err << "tile " << id << " failed: " << e.what() << '\n';
            }
        },
        stop);

    const bool cancelled = processed < ids.size();
    if (cancelled) {
        log.event("cancelled", {{"processed", processed}, {"tiles", ids.size()}});
        if (!plan_only) {
            const DatasetIndex index = assemble(dir, src.classes());
            write_json(dir / "index.json", to_json(index));
            log.event("partial-index", {{"pairs", index.pairs.size()}});
        }
        err << command << " cancelled after " << processed << " of " << ids.size() << " tiles\n";
    }
    log.event("finish", {{"command", command},
                         {"failed_variants", failed_variants.load()},
                         {"failed_tiles", failed_tiles.load()}});
    out << command << ": " << processed << " tiles, " << failed_variants.load() << " failed variants, "
        << failed_tiles.load() << " failed tiles\n";
    return cancelled || failed_variants > 0 || failed_tiles > 0 ? exit_code::kPartial : exit_code::kOk;
}

int cmd_assemble(const RunConfig& c, bool siblings, const std::optional<std::string>& seg_dir, std::ostream& out) {
    const fs::path dir = require_dir(c.out, "--out");
    const ClassTable classes = output_class_table(dir, c);
    RunLog log(dir);
    AssembleOptions options;
    options.siblings = siblings;
    if (seg_dir) options.segmentation_dir = *seg_dir;
    const DatasetIndex index = assemble(dir, classes, options);
    write_json(dir / "index.json", to_json(index));
    log.event("assemble", {{"pairs", index.pairs.size()}, {"failures", index.failures.size()}});
    out << "index.json: " << index.pairs.size() << " pairs, " << index.failures.size() << " failures, prevalence "
        << index.prevalence_percent() << "%\n";
    return index.failures.empty() ? exit_code::kOk : exit_code::kPartial;
}

struct EvalItem {
    fs::path change;
    std::optional<fs::path> first;
    std::optional<fs::path> second;
};

/// An assembled root (index.json) or any tree of `<pair_id>/change.png` files with optional
/// `semantic_first.png` / `semantic_second.png` siblings.
std::map<std::string, EvalItem> load_eval_set(const fs::path& root, int* class_count) {
    std::map<std::string, EvalItem> items;
    if (fs::exists(root / "index.json")) {
        const auto index = read_json(root / "index.json");
        if (class_count && index.contains("class_count")) *class_count = index["class_count"].get<int>();
        for (const auto& p : index.at("pairs")) {
            items[p.at("pair_id").get<std::string>()] = {root / p.at("change").get<std::string>(),
                                                         root / p.at("first").at("semantic").get<std::string>(),
                                                         root / p.at("second").at("semantic").get<std::string>()};
        }
        return items;
    }
    if (!fs::is_directory(root)) throw IoError(root.string() + " is not a directory");
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file() || entry.path().filename() != "change.png") continue;
        const fs::path d = entry.path().parent_path();
        EvalItem item{entry.path(), std::nullopt, std::nullopt};
        if (fs::exists(d / "semantic_first.png")) item.first = d / "semantic_first.png";
        if (fs::exists(d / "semantic_second.png")) item.second = d / "semantic_second.png";
        items[fs::relative(d, root).generic_string()] = item;
    }
    return items;
}

int cmd_evaluate(const RunConfig& c, const std::string& truth_dir, const std::string& pred_dir,
                 const std::optional<std::string>& remap_path, std::optional<std::string> dataset, std::ostream& out) {
    int k = c.class_table ? ClassTable::load(*c.class_table).size() : ClassTable::flair16().size();
    int truth_k = k;
    const auto truth = load_eval_set(truth_dir, &truth_k);
    if (!c.class_table) k = truth_k;
    const auto pred = load_eval_set(pred_dir, nullptr);
    if (truth.empty()) throw Error("no pairs found under " + truth_dir);

    std::optional<RemapTable> remap;
    if (remap_path) {
        remap = RemapTable::load(*remap_path);
        remap->require_total(k);
    }
    EvalAccumulator acc(remap ? remap->target_count() : k);
    for (const auto& [id, t] : truth) {
        const auto it = pred.find(id);
        if (it == pred.end()) throw Error("prediction is missing pair " + id);
        const EvalItem& p = it->second;
        const bool semantic = t.first && t.second && p.first && p.second && fs::exists(*t.first) &&
                              fs::exists(*t.second) && fs::exists(*p.first) && fs::exists(*p.second);
        if (!remap) {
            acc.add_change(read_change(t.change), read_change(p.change));
            if (semantic) {
                acc.add_semantic(read_semantic(*t.first), read_semantic(*p.first));
                acc.add_semantic(read_semantic(*t.second), read_semantic(*p.second));
                ++acc.pairs_with_semantic;
            }
            continue;
        }
        if (semantic) {
            const RemappedPair rt = remap_pair(read_semantic(*t.first), read_semantic(*t.second), *remap);
            const RemappedPair rp = remap_pair(read_semantic(*p.first), read_semantic(*p.second), *remap);
            acc.add_change(rt.change, rp.change, &rt.valid);
            acc.add_semantic(rt.first, rp.first, &rt.valid);
            acc.add_semantic(rt.second, rp.second, &rt.valid);
            ++acc.pairs_with_semantic;
        } else {
            const auto [tc, tv] = remap_change(read_change(t.change), k, *remap);
            const auto [pc, pv] = remap_change(read_change(p.change), k, *remap);
            acc.add_change(tc, pc, &tv);
        }
    }
    const fs::path dir = c.out ? *c.out : fs::path(".");
    fs::create_directories(dir);
    const MetricReport report = make_report(dataset.value_or(fs::path(truth_dir).filename().string()), acc);
    nlohmann::json j = to_json(report);
    if (remap) j["remap"] = remap->to_json();
    write_json(dir / "report.json", j);
    write_text(dir / "report.csv", report_csv_header() + "\n" + report_csv_row(report) + "\n");
    out << report_csv_header() << '\n' << report_csv_row(report) << '\n';
    return exit_code::kOk;
}

std::vector<std::string> pair_ids_of(const fs::path& p, int* class_count = nullptr) {
    const fs::path file = fs::is_directory(p) ? p / "index.json" : p;
    const auto index = read_json(file);
    if (class_count && index.contains("class_count")) *class_count = index["class_count"].get<int>();
    std::vector<std::string> ids;
    for (const auto& pair : index.at("pairs")) ids.push_back(pair.at("pair_id").get<std::string>());
    return ids;
}

std::string dataset_name(const std::string& p) {
    const fs::path path(p);
    return fs::is_directory(path) ? fs::weakly_canonical(path).filename().string()
                                  : fs::weakly_canonical(path).parent_path().filename().string();
}

struct ManifestArgs {
    std::string scenario;
    std::optional<std::string> target;
    std::optional<std::string> source;
    std::optional<double> percent;
    std::optional<std::size_t> epoch;
    std::optional<std::string> remap;
};

int cmd_manifest(const RunConfig& c, const ManifestArgs& a, std::ostream& out) {
    const Scenario scenario = scenario_from_string(a.scenario);
    const auto need = [](const std::optional<std::string>& v, const char* flag) -> const std::string& {
        if (!v) throw ConfigError(std::string(flag) + " is required for this scenario");
        return *v;
    };
    Manifest m;
    switch (scenario) {
    case Scenario::LowData:
        m = subsample(pair_ids_of(need(a.target, "--target")), a.percent.value_or(100.0), c.seed);
        break;
    case Scenario::Mixed:
        if (!a.epoch) throw ConfigError("--epoch is required for the mixed scenario");
        if (!a.percent) throw ConfigError("--percent is required for the mixed scenario");
        m = mix(pair_ids_of(need(a.target, "--target")), pair_ids_of(need(a.source, "--source-index")), *a.percent,
                *a.epoch, c.seed);
        break;
    case Scenario::Sequential:
        m = sequential(pair_ids_of(need(a.source, "--source-index")), pair_ids_of(need(a.target, "--target")),
                       c.seed);
        break;
    case Scenario::ZeroShot: {
        int k = ClassTable::flair16().size();
        const auto ids = pair_ids_of(need(a.source, "--source-index"), &k);
        const RemapTable table = RemapTable::load(need(a.remap, "--remap"));
        table.require_total(k);
        m = zero_shot(ids, c.seed);
        m.spec.remap = table.to_json();
        break;
    }
    }
    if (a.target) m.spec.target_id = dataset_name(*a.target);
    if (a.source) m.spec.source_id = dataset_name(*a.source);
    const fs::path dir = require_out(c.out);
    write_json(dir / "manifest.json", to_json(m));
    out << "manifest.json: " << m.entries.size() << " entries (" << m.count(Origin::Target) << " target, "
        << m.count(Origin::Source) << " source)\n";
    return exit_code::kOk;
}

int cmd_serve_check(const RunConfig& c, const ConformanceOptions& options, std::ostream& out) {
    if (c.url.empty()) throw ConfigError("serve-check needs --url or HYSCDG_BACKEND_URL");
    const ClassTable classes = c.class_table ? ClassTable::load(*c.class_table) : ClassTable::flair16();
    const auto results = run_conformance(c.url, classes, options);
    bool all = true;
    for (const auto& r : results) {
        const bool pass = r.status == ProbeResult::Status::Pass;
        all = all && pass;
        out << (pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    }
    return all ? exit_code::kOk : exit_code::kFatal;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const std::atomic<bool>* stop) {
    CLI::App app{"Synthetic semantic change detection dataset builder", "hyscdg"};
    app.require_subcommand(1);
    Flags f;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", f.config, "TOML config file (default ./hyscdg.toml if present)");
        sub->add_option("--seed", f.seed, "Master seed");
        sub->add_option("--class-table", f.class_table, "Class table JSON");
    };
    const auto add_source = [&](CLI::App* sub) {
        sub->add_option("--source", f.source, "Source dataset root");
        sub->add_option("--min-area", f.min_area, "Drop footprints below this area (m^2)");
    };
    const auto add_planner = [&](CLI::App* sub) {
        sub->add_option("--variants", f.variants, "Synthetic variants per tile");
        sub->add_option("--buffer-px", f.buffer_px, "Footprint buffer radius (px)");
        sub->add_option("--feather-px", f.feather_px, "Feather band width (px)");
        sub->add_option("--tau", f.tau, "Prompt salience ratio");
        sub->add_option("--jobs", f.jobs, "Worker threads");
    };

    auto* stats = app.add_subcommand("stats", "Compute dataset class statistics");
    add_common(stats);
    add_source(stats);
    stats->add_option("--out", f.out, "Output root");

    auto* plan = app.add_subcommand("plan", "Write change plans only (no pixels)");
    add_common(plan);
    add_source(plan);
    add_planner(plan);
    plan->add_option("--out", f.out, "Output root");

    auto* generate = app.add_subcommand("generate", "Plan and inpaint every tile");
    add_common(generate);
    add_source(generate);
    add_planner(generate);
    generate->add_option("--out", f.out, "Output root");
    generate->add_option("--backend", f.backend, "procedural | remote");
    generate->add_option("--url", f.url, "Remote backend URL");

    bool no_siblings = false;
    std::optional<std::string> seg_dir;
    auto* assemble_cmd = app.add_subcommand("assemble", "Expand pairs and write index.json");
    add_common(assemble_cmd);
    assemble_cmd->add_option("--out", f.out, "Output root of a generate run");
    assemble_cmd->add_flag("--no-siblings", no_siblings, "Skip synth-synth sibling pairs");
    assemble_cmd->add_option("--seg-dir", seg_dir, "External segmentation maps <dir>/<tile>/v<k>.png");

    std::string truth_dir, pred_dir;
    std::optional<std::string> remap_path, dataset;
    auto* evaluate = app.add_subcommand("evaluate", "Score predictions against ground truth");
    add_common(evaluate);
    evaluate->add_option("--truth", truth_dir, "Ground-truth root")->required();
    evaluate->add_option("--pred", pred_dir, "Prediction root")->required();
    evaluate->add_option("--out", f.out, "Directory for report.json / report.csv");
    evaluate->add_option("--remap", remap_path, "Class remap table");
    evaluate->add_option("--dataset", dataset, "Dataset name in the report");

    ManifestArgs margs;
    auto* manifest = app.add_subcommand("manifest", "Build a training manifest");
    add_common(manifest);
    manifest->add_option("--scenario", margs.scenario, "sequential | low-data | mixed | zero-shot")->required();
    manifest->add_option("--target", margs.target, "Target index.json or dataset root");
    manifest->add_option("--source-index", margs.source, "Source index.json or dataset root");
    manifest->add_option("--percent", margs.percent, "Subset fraction or target ratio (%)");
    manifest->add_option("--epoch", margs.epoch, "Epoch length (mixed)");
    manifest->add_option("--remap", margs.remap, "Class remap table (zero-shot)");
    manifest->add_option("--out", f.out, "Output directory");

    ConformanceOptions probe;
    auto* serve_check = app.add_subcommand("serve-check", "Probe a remote inpainting service");
    add_common(serve_check);
    serve_check->add_option("--url", f.url, "Service URL");
    serve_check->add_option("--parity-seeds", probe.parity_seeds, "Golden parity seeds");
    serve_check->add_option("--busy-burst", probe.busy_burst, "Concurrent requests for the 503 probe");
    serve_check->add_option("--timeout-ms", probe.timeout_ms, "Per-request timeout");

    FixtureOptions fx;
    auto* fixture = app.add_subcommand("fixture", "Write a synthetic source dataset");
    fixture->add_option("--out", f.out, "Output root")->required();
    fixture->add_option("--tiles", fx.tiles, "Tile count");
    fixture->add_option("--size", fx.size, "Tile side (px)");
    fixture->add_option("--seed", fx.seed, "Fixture seed");
    fixture->add_option("--min-instances", fx.min_instances, "Instances per tile, lower bound");
    fixture->add_option("--max-instances", fx.max_instances, "Instances per tile, upper bound");
    fixture->add_option("--instance-min-px", fx.instance_min_px, "Instance side, lower bound (px)");
    fixture->add_option("--instance-max-px", fx.instance_max_px, "Instance side, upper bound (px)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_code::kUsage;
    }

    try {
        if (*fixture) {
            const auto report = write_fixture(*f.out, fx);
            out << "fixture: " << report.tile_ids.size() << " tiles, " << report.footprints << " footprints\n";
            return exit_code::kOk;
        }
        const RunConfig c = resolve(f);
        if (*stats) return cmd_stats(c, out);
        if (*plan) return run_generation(c, true, out, err, stop);
        if (*generate) return run_generation(c, false, out, err, stop);
        if (*assemble_cmd) return cmd_assemble(c, !no_siblings, seg_dir, out);
        if (*evaluate) return cmd_evaluate(c, truth_dir, pred_dir, remap_path, dataset, out);
        if (*manifest) return cmd_manifest(c, margs, out);
        if (*serve_check) return cmd_serve_check(c, probe, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kFatal;
    }
    return exit_code::kUsage;
}

} // namespace hyscdg
