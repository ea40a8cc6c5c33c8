#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polariton/engines/green.hpp"
#include "polariton/grid.hpp"

namespace polariton {

/// Engine names as written in configs and on the command line:
/// dense, cf_full, cf_truncated<k>, d0, d1, d2_x2, d0+d1, d0+d1+d2_x2,
/// dyson<m>.
EngineTag parse_engine(const std::string& name);
std::vector<std::string> split_list(const std::string& text);

struct Analyses {
    bool peaks = true;
    bool modes = true;
    bool sum_rule = false;
    bool chi = false;
    bool dyson = false;
};

struct RunConfig {
    std::optional<EnsembleSpec> ensemble;
    std::optional<std::filesystem::path> ensemble_file;
    std::optional<std::string> preset;
    std::vector<std::string> engines;
    std::optional<FrequencyGrid> grid;  ///< default derived from the ensemble
    Analyses analyses;
    std::filesystem::path output_dir = ".";
    /// Total molecule counts to sweep at fixed lambda sqrt(N). Empty: run the
    /// ensemble as given.
    std::vector<int> sweep_n;
    double peak_prominence = 1e-4;
    int dyson_order = 4;
};

/// Default sideband grid: 4001 points over
/// [w_e0 - 2.5 g, w_e0 + w_v + 2.5 g] with g = lambda sqrt(N).
FrequencyGrid default_grid(const EnsembleSpec& spec);

nlohmann::json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& doc);

/// Ensemble used by the run: the inline spec, or the file contents.
EnsembleSpec resolve_ensemble(const RunConfig& config);

/// Throws ConfigError on an empty engine list or unknown engine names.
void validate(const RunConfig& config);

}  // namespace polariton
