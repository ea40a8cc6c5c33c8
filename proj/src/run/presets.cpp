#include "polariton/run/presets.hpp"

#include <cmath>

#include "polariton/errors.hpp"

namespace polariton {
namespace {

SpeciesSpec three_level(int count, double vibrational_gap) {
    SpeciesSpec s;
    s.count = count;
    s.ground_levels = {0.0, vibrational_gap};
    s.excited_levels = {10.0};
    s.fc_overlaps.resize(1, 2);
    s.fc_overlaps << kFig2aOverlap0, kFig2aOverlap1;
    return s;
}

}  // namespace

EnsembleSpec fig2a_ensemble(int total_count) {
    if (total_count < 1) throw ConfigError("fig2a needs N >= 1");
    EnsembleSpec spec;
    spec.cavity = {10.0, 0.1};
    spec.species = {three_level(total_count, 1.0)};
    spec.lambda = 0.8 / std::sqrt(double(total_count));
    spec.gamma = 0.1;
    return spec;
}

EnsembleSpec fig2b_ensemble(int per_species) {
    if (per_species < 1) throw ConfigError("fig2b needs at least one molecule per species");
    EnsembleSpec spec;
    spec.cavity = {10.0, 0.05};
    spec.species = {three_level(per_species, 1.0), three_level(per_species, 1.2)};
    spec.lambda = 0.6 / std::sqrt(2.0 * per_species);
    spec.gamma = 0.05;
    return spec;
}

RunConfig preset_fig2a() {
    RunConfig config;
    config.preset = "fig2a";
    config.ensemble = fig2a_ensemble(10);
    config.engines = {"d0", "d0+d1", "cf_full"};
    config.sweep_n = {10, 50, 250};
    return config;
}

RunConfig preset_fig2b() {
    RunConfig config;
    config.preset = "fig2b";
    config.ensemble = fig2b_ensemble(25);
    config.engines = {"cf_truncated0", "cf_truncated1", "cf_truncated2"};
    config.grid = FrequencyGrid{8.5, 13.9, 4001};
    return config;
}

std::vector<std::string> preset_names() { return {"fig2a", "fig2b"}; }

RunConfig run_preset(const std::string& name) {
    if (name == "fig2a") return preset_fig2a();
    if (name == "fig2b") return preset_fig2b();
    std::string list;
    for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "' (available: " + list + ")");
}

}  // namespace polariton
