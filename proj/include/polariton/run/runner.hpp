#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "polariton/run/run_config.hpp"

namespace polariton {

inline constexpr const char* kVersion = "1.0.0";

struct RunOutputs {
    std::vector<std::filesystem::path> files;
    bool numeric_failure = false;
};

/// One CSV per engine (and per N when sweeping), a peaks JSON, a modes JSON
/// and a manifest that re-runs the same computation.
RunOutputs run_spectrum(const RunConfig& config);

/// Pairwise max/mean relative differences between engines. Needs two or more
/// engines; with sweep_n also reports how each difference scales with N.
RunOutputs run_compare(const RunConfig& config);

/// Per-omega table of the closed-form susceptibility terms.
RunOutputs run_chi(const RunConfig& config);

/// Walk enumeration, classification and values at the grid frequencies.
RunOutputs run_dyson(const RunConfig& config, int m_max);

/// Mode frequencies of the zeroth- and first-order boxes.
RunOutputs run_modes(const RunConfig& config);

/// Writes `content` to `path` through a temporary file and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip text for a JSON document, two-space indent.
std::string dump_json(const nlohmann::json& doc);

/// Loads either a RunConfig document, a run manifest, or a bare ensemble
/// file (wrapped into a config with defaults).
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace polariton
