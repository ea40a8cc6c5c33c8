#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "polariton/errors.hpp"
#include "polariton/model/config_io.hpp"
#include "polariton/run/presets.hpp"
#include "polariton/run/runner.hpp"
#include "support.hpp"

using namespace polariton;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::path(POLARITON_TEST_TMP) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int run_cli(const std::string& args) {
    const std::string command = std::string(POLARITON_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunConfig small_config(const fs::path& out) {
    RunConfig config;
    config.ensemble = fig2a_ensemble(4);
    config.engines = {"dense", "cf_full", "d0"};
    config.grid = FrequencyGrid{8.5, 12.5, 201};
    config.output_dir = out;
    return config;
}

}  // namespace

TEST(EngineNames, ParseAndPrintRoundTrip) {
    for (const std::string name : {"dense", "cf_full", "cf_truncated0", "cf_truncated3", "d0", "d1", "d2_x2", "d0+d1",
                                   "d0+d1+d2_x2", "dyson5"}) {
        EXPECT_EQ(parse_engine(name).name(), name);
    }
    EXPECT_THROW(parse_engine("cf"), ConfigError);
    EXPECT_THROW(parse_engine("cf_truncated"), ConfigError);
    EXPECT_THROW(parse_engine("cf_truncated-1"), ConfigError);
    EXPECT_THROW(parse_engine("d3"), ConfigError);
}

TEST(EngineNames, SplitList) {
    EXPECT_EQ(split_list("a, b,c"), (std::vector<std::string>{"a", "b", "c"}));
    EXPECT_TRUE(split_list("").empty());
}

TEST(Grid, Parse) {
    const auto g = parse_grid("9.5:11:4");
    EXPECT_EQ(g.min, 9.5);
    EXPECT_EQ(g.max, 11.0);
    EXPECT_EQ(g.points, 4);
    EXPECT_EQ(g.values(), (std::vector<double>{9.5, 10.0, 10.5, 11.0}));
    for (const std::string bad : {"", "1:2", "1:2:1", "2:1:10", "a:2:3", "1:2:3:4", "1:nan:3"}) {
        EXPECT_THROW(parse_grid(bad), ConfigError) << bad;
    }
}

TEST(Presets, Contents) {
    const auto a = run_preset("fig2a");
    EXPECT_EQ(a.preset, "fig2a");
    EXPECT_EQ(a.engines, (std::vector<std::string>{"d0", "d0+d1", "cf_full"}));
    EXPECT_EQ(a.sweep_n, (std::vector<int>{10, 50, 250}));
    EXPECT_NEAR(a.ensemble->lambda * std::sqrt(10.0), 0.8, 1e-15);
    const auto b = run_preset("fig2b");
    EXPECT_EQ(b.ensemble->species.size(), 2u);
    EXPECT_EQ(b.ensemble->total_count(), 50);
    try {
        run_preset("fig9");
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("fig2a"), std::string::npos);
    }
}

TEST(RunConfigIo, DefaultGrid) {
    const auto g = default_grid(fig2a_ensemble(10));
    EXPECT_EQ(g.points, 4001);
    EXPECT_NEAR(g.min, 10.0 - 2.0, 1e-12);
    EXPECT_NEAR(g.max, 11.0 + 2.0, 1e-12);
}

TEST(RunConfigIo, RoundTrip) {
    auto config = small_config("out");
    config.sweep_n = {4, 16};
    config.analyses.sum_rule = true;
    const auto again = run_config_from_json(run_config_to_json(config));
    EXPECT_EQ(run_config_to_json(again), run_config_to_json(config));
}

TEST(RunConfigIo, ErrorsCarryPointers) {
    auto doc = run_config_to_json(small_config("out"));
    doc["engines"] = nlohmann::json::array({"dense", "bogus"});
    try {
        validate(run_config_from_json(doc));
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
    }
    doc = run_config_to_json(small_config("out"));
    doc["unexpected"] = 1;
    try {
        run_config_from_json(doc);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("/unexpected"), std::string::npos);
    }
    RunConfig empty = small_config("out");
    empty.engines.clear();
    EXPECT_THROW(validate(empty), ConfigError);
}

TEST(Runner, SpectrumWritesFilesAndIsDeterministic) {
    const auto dir = fresh_dir("spectrum");
    auto config = small_config(dir / "a");
    const auto first = run_spectrum(config);
    EXPECT_FALSE(first.numeric_failure);
    for (const std::string name : {"spectrum_dense.csv", "spectrum_cf_full.csv", "spectrum_d0.csv", "peaks.json",
                                   "modes.json", "manifest.json"}) {
        EXPECT_TRUE(fs::exists(dir / "a" / name)) << name;
    }
    config.output_dir = dir / "b";
    run_spectrum(config);
    for (const auto& entry : fs::directory_iterator(dir / "a")) {
        EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / entry.path().filename())) << entry.path();
    }
    const auto header = slurp(dir / "a" / "spectrum_cf_full.csv").substr(0, 40);
    EXPECT_EQ(header.rfind("omega,", 0), 0u);
}

TEST(Runner, ManifestReproducesRun) {
    const auto dir = fresh_dir("manifest");
    run_spectrum(small_config(dir / "a"));
    auto replay = load_run_config(dir / "a" / "manifest.json");
    replay.output_dir = dir / "b";
    run_spectrum(replay);
    EXPECT_EQ(slurp(dir / "a" / "spectrum_dense.csv"), slurp(dir / "b" / "spectrum_dense.csv"));
    EXPECT_EQ(slurp(dir / "a" / "manifest.json"), slurp(dir / "b" / "manifest.json"));
}

TEST(Runner, CompareNeedsTwoEngines) {
    auto config = small_config(fresh_dir("compare1"));
    config.engines = {"cf_full"};
    EXPECT_THROW(run_compare(config), ConfigError);
}

TEST(Runner, CompareDenseAgainstRecursion) {
    const auto dir = fresh_dir("compare2");
    auto config = small_config(dir);
    config.engines = {"dense", "cf_full"};
    run_compare(config);
    const auto doc = nlohmann::json::parse(slurp(dir / "compare.json"));
    const auto& pair = doc.at("runs").at(0).at("pairs").at(0);
    EXPECT_LE(pair.at("max_rel_diff").get<double>(), 1e-9);
}

TEST(Runner, ThermodynamicLimitCompare) {
    const auto dir = fresh_dir("compare3");
    RunConfig config;
    config.ensemble = fig2a_ensemble(1000000);
    config.engines = {"d0", "cf_full"};
    config.grid = FrequencyGrid{9.0, 11.0, 41};
    config.output_dir = dir;
    run_compare(config);
    const auto doc = nlohmann::json::parse(slurp(dir / "compare.json"));
    EXPECT_LE(doc.at("runs").at(0).at("pairs").at(0).at("max_rel_diff").get<double>(), 1e-5);
}

TEST(Runner, SweepReportsScaling) {
    const auto dir = fresh_dir("compare4");
    RunConfig config;
    config.ensemble = fig2a_ensemble(10);
    config.engines = {"d0", "cf_full"};
    config.sweep_n = {10, 40, 160};
    config.grid = FrequencyGrid{8.0, 13.0, 501};
    config.output_dir = dir;
    run_compare(config);
    const auto doc = nlohmann::json::parse(slurp(dir / "compare.json"));
    ASSERT_EQ(doc.at("runs").size(), 3u);
    ASSERT_TRUE(doc.contains("scaling"));
}

TEST(Runner, LoadsBareEnsembleFile) {
    const auto dir = fresh_dir("bare");
    std::ofstream(dir / "ensemble.json") << dump_json(ensemble_to_json(fig2a_ensemble(3)));
    const auto config = load_run_config(dir / "ensemble.json");
    EXPECT_EQ(config.engines, (std::vector<std::string>{"cf_full"}));
    EXPECT_EQ(resolve_ensemble(config).total_count(), 3);
}

TEST(Runner, AtomicWriteLeavesNoTemporary) {
    const auto dir = fresh_dir("atomic");
    write_atomically(dir / "x.txt", "hello\n");
    EXPECT_EQ(slurp(dir / "x.txt"), "hello\n");
    EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 1);
    EXPECT_THROW(write_atomically(dir / "missing" / "x.txt", "y"), IoError);
}

TEST(Cli, ExitCodes) {
    const auto dir = fresh_dir("cli");
    EXPECT_EQ(run_cli("spectrum --preset fig2a --grid 9:12:101 --out " + (dir / "ok").string()), 0);
    EXPECT_EQ(run_cli("spectrum --preset nope --out " + (dir / "x").string()), 2);
    EXPECT_EQ(run_cli("spectrum --preset fig2a --engines warp --out " + (dir / "x").string()), 2);
    EXPECT_EQ(run_cli("spectrum --preset fig2a --grid 2:1:10 --out " + (dir / "x").string()), 2);
    EXPECT_EQ(run_cli("spectrum --config " + (dir / "absent.json").string()), 4);
    std::ofstream(dir / "garbage.json") << "{ not json";
    EXPECT_EQ(run_cli("spectrum --config " + (dir / "garbage.json").string()), 2);
    std::ofstream(dir / "blocker") << "";
    EXPECT_EQ(run_cli("spectrum --preset fig2a --grid 9:12:11 --out " + (dir / "blocker" / "sub").string()), 4);
}

TEST(Cli, PresetAndModes) {
    const auto dir = fresh_dir("cli2");
    EXPECT_EQ(run_cli("preset fig2b --out " + dir.string()), 0);
    EXPECT_TRUE(fs::exists(dir / "preset_fig2b.json"));
    EXPECT_EQ(run_cli("spectrum --config " + (dir / "preset_fig2b.json").string() + " --grid 9:12:51 --out " +
                      (dir / "run").string()),
              0);
    EXPECT_EQ(run_cli("modes --preset fig2a --out " + (dir / "modes").string()), 0);
    EXPECT_EQ(run_cli("dyson --preset fig2a --order 3 --grid 9:12:5 --sweep-N 10 --out " + (dir / "dyson").string()),
              0);
    EXPECT_EQ(run_cli("chi --preset fig2a --grid 9:12:5 --sweep-N 10 --out " + (dir / "chi").string()), 0);
}
