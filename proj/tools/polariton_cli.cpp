#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polariton/errors.hpp"
#include "polariton/parallel.hpp"
#include "polariton/run/presets.hpp"
#include "polariton/run/runner.hpp"

using namespace polariton;

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumeric = 3, kIo = 4 };

struct Options {
    std::string config_path;
    std::string preset;
    std::string grid;
    std::string engines;
    std::string out;
    std::string sweep;
    unsigned threads = 0;
    int order = -1;
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config_path, "Run config, manifest or ensemble JSON");
    cmd->add_option("--preset", o.preset, "Built-in preset (fig2a, fig2b)");
    cmd->add_option("--grid", o.grid, "Frequency grid MIN:MAX:POINTS");
    cmd->add_option("--engines", o.engines, "Comma-separated engine list");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--sweep-N", o.sweep, "Comma-separated total molecule counts");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

RunConfig build_config(const Options& o) {
    RunConfig config;
    if (!o.config_path.empty()) config = load_run_config(o.config_path);
    if (!o.preset.empty()) {
        if (config.ensemble && !config.preset) {
            std::cerr << "notice: preset '" << o.preset << "' overrides the inline ensemble\n";
        }
        RunConfig preset = run_preset(o.preset);
        if (!o.config_path.empty()) {
            preset.analyses = config.analyses;
            preset.peak_prominence = config.peak_prominence;
            preset.dyson_order = config.dyson_order;
            if (config.grid) preset.grid = config.grid;
            if (!config.engines.empty()) preset.engines = config.engines;
            if (!config.sweep_n.empty()) preset.sweep_n = config.sweep_n;
            preset.output_dir = config.output_dir;
        }
        config = preset;
    }
    if (!o.grid.empty()) config.grid = parse_grid(o.grid);
    if (!o.engines.empty()) config.engines = split_list(o.engines);
    if (!o.out.empty()) config.output_dir = o.out;
    if (!o.sweep.empty()) {
        config.sweep_n.clear();
        for (const auto& item : split_list(o.sweep)) {
            std::size_t used = 0;
            int n = 0;
            try {
                n = std::stoi(item, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != item.size() || n < 1) throw ConfigError("--sweep-N expects positive integers, got '" + item + "'");
            config.sweep_n.push_back(n);
        }
    }
    if (config.engines.empty()) config.engines = {"cf_full"};
    return config;
}

void summarize(const RunOutputs& out) {
    for (const auto& f : out.files) std::cout << f.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon Green's function, spectra and diagram tools for molecular polaritons"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    Options o;
    auto* spectrum = app.add_subcommand("spectrum", "Spectra (A, T, R) per engine with peaks and modes");
    auto* compare = app.add_subcommand("compare", "Pairwise engine differences, optionally across N");
    auto* chi = app.add_subcommand("chi", "Closed-form susceptibility table");
    auto* dyson = app.add_subcommand("dyson", "Chain walks, classification and Dyson partial sums");
    auto* modes = app.add_subcommand("modes", "Zeroth- and first-order polariton modes");
    auto* preset = app.add_subcommand("preset", "Print or write a preset run config");
    for (auto* cmd : {spectrum, compare, chi, dyson, modes, preset}) add_common(cmd, o);
    dyson->add_option("--order", o.order, "Largest number of round trips m (default from config)");
    std::string preset_name;
    preset->add_option("name", preset_name, "Preset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfig;
    }

    try {
        set_thread_count(o.threads);
        if (preset->parsed()) {
            RunConfig config = run_preset(preset_name);
            if (!o.grid.empty()) config.grid = parse_grid(o.grid);
            const std::string text = dump_json(run_config_to_json(config));
            if (o.out.empty()) {
                std::cout << text;
            } else {
                std::filesystem::create_directories(o.out);
                const auto path = std::filesystem::path(o.out) / ("preset_" + preset_name + ".json");
                write_atomically(path, text);
                std::cout << path.string() << "\n";
            }
            return kOk;
        }
        const RunConfig config = build_config(o);
        RunOutputs out;
        if (spectrum->parsed()) out = run_spectrum(config);
        if (compare->parsed()) out = run_compare(config);
        if (chi->parsed()) out = run_chi(config);
        if (dyson->parsed()) out = run_dyson(config, o.order >= 0 ? o.order : config.dyson_order);
        if (modes->parsed()) out = run_modes(config);
        summarize(out);
        return out.numeric_failure ? kNumeric : kOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const RangeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const SizingError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    }
}
