#include "hyscdg/cli.hpp"
#include "hyscdg/raster_io.hpp"
#include "hyscdg/rng.hpp"

#include "support/temp_dir.hpp"

#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

using namespace hyscdg;
using hyscdg::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<fs::path> files_under(const fs::path& root) {
    std::vector<fs::path> v;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) v.push_back(fs::relative(e.path(), root));
    std::sort(v.begin(), v.end());
    return v;
}

/// Small fixture shared by the tests in this file.
const fs::path& source() {
    static TempDir dir("cli-src");
    static const fs::path root = [] {
        const CliRun r = run({"fixture", "--out", (dir / "src").string(), "--tiles", "3", "--size", "48"});
        EXPECT_EQ(r.code, 0) << r.err;
        return dir / "src";
    }();
    return root;
}

} // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, exit_code::kUsage);
    EXPECT_EQ(run({"frobnicate"}).code, exit_code::kUsage);
    EXPECT_EQ(run({"plan", "--no-such-flag"}).code, exit_code::kUsage);
    TempDir dir("cli");
    const CliRun r = run({"plan", "--source", source().string(), "--out", (dir / "o").string(), "--variants", "0"});
    EXPECT_EQ(r.code, exit_code::kUsage);
    EXPECT_NE(r.err.find("--variants"), std::string::npos);
    EXPECT_EQ(run({"plan", "--source", (dir / "missing").string(), "--out", (dir / "o").string()}).code,
              exit_code::kFatal);
}

TEST(Cli, HelpExitsZero) {
    const CliRun r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("generate"), std::string::npos);
}

TEST(Cli, StatsWritesClassStats) {
    TempDir dir("cli");
    const CliRun r = run({"stats", "--source", source().string(), "--out", dir.path().string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = read_json(dir / "class_stats.json");
    EXPECT_EQ(j["counts"].size(), 16u);
}

TEST(Cli, PlanIsDeterministicAndWritesNoImages) {
    TempDir dir("cli");
    for (const char* o : {"a", "b"}) {
        const CliRun r = run({"plan", "--source", source().string(), "--out", (dir / o).string(), "--seed", "11",
                           "--jobs", "2"});
        ASSERT_EQ(r.code, 0) << r.err;
    }
    const auto files = files_under(dir / "a");
    EXPECT_EQ(files, files_under(dir / "b"));
    int plans = 0;
    for (const auto& f : files) {
        EXPECT_NE(f.extension(), ".tif");
        EXPECT_NE(f.extension(), ".png");
        if (f.parent_path() == "plans") {
            ++plans;
            EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
        }
    }
    EXPECT_EQ(plans, 9);
}

TEST(Cli, ConfigFilePrecedence) {
    TempDir dir("cli");
    {
        std::ofstream toml(dir / "hyscdg.toml");
        toml << "source = \"" << source().generic_string() << "\"\nvariants = 2\nseed = 4\n";
    }
    const auto plan_count = [&](const fs::path& out) {
        int n = 0;
        for (const auto& e : fs::directory_iterator(out / "plans")) n += e.path().extension() == ".json";
        return n;
    };
    ASSERT_EQ(run({"plan", "--config", (dir / "hyscdg.toml").string(), "--out", (dir / "t").string()}).code, 0);
    EXPECT_EQ(plan_count(dir / "t"), 6);
    EXPECT_EQ(read_json(dir / "t" / "plans" / "T000_v0.json")["seed"].get<std::uint64_t>(),
              derive_plan_seed(4, "T000", 0));
    ASSERT_EQ(run({"plan", "--config", (dir / "hyscdg.toml").string(), "--out", (dir / "f").string(), "--variants",
                   "1"})
                  .code,
              0);
    EXPECT_EQ(plan_count(dir / "f"), 3);
}

TEST(Cli, GenerateAssembleEvaluateRoundTrip) {
    TempDir dir("cli");
    const std::string out = (dir / "out").string();
    CliRun r = run({"generate", "--source", source().string(), "--out", out, "--seed", "2", "--jobs", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    r = run({"assemble", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto index = read_json(dir / "out" / "index.json");
    EXPECT_EQ(index["pairs"].size(), 18u);
    EXPECT_TRUE(fs::exists(dir / "out" / "run.log.jsonl"));

    r = run({"evaluate", "--truth", out, "--pred", out, "--out", (dir / "eval").string(), "--dataset", "self"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto report = read_json(dir / "eval" / "report.json");
    EXPECT_EQ(report["iou"]["value"], 1.0);
    EXPECT_EQ(report["f1"]["value"], 1.0);
    EXPECT_EQ(report["scs"]["value"], 1.0);
    EXPECT_EQ(report["sek"]["value"], 1.0);
    EXPECT_EQ(report["sem_miou"]["value"], 1.0);
    EXPECT_EQ(slurp(dir / "eval" / "report.csv").rfind("dataset,pairs,iou,f1,miou,overall_iou,sek,scs,change_miou,sem_miou\nself,18,1,1,", 0), 0u);

    r = run({"manifest", "--scenario", "mixed", "--target", out, "--source-index", out, "--percent", "50", "--epoch",
             "97", "--out", (dir / "m").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto m = read_json(dir / "m" / "manifest.json");
    EXPECT_EQ(m["entries"].size(), 97u);
    EXPECT_EQ(run({"manifest", "--scenario", "mixed", "--target", out, "--out", (dir / "m").string()}).code,
              exit_code::kUsage);
}

TEST(Cli, RemoteBackendWithoutUrlIsAUsageError) {
    TempDir dir("cli");
    ::unsetenv("HYSCDG_BACKEND_URL");
    const CliRun r = run({"generate", "--source", source().string(), "--out", (dir / "o").string(), "--backend", "remote"});
    EXPECT_EQ(r.code, exit_code::kUsage);
}
