#pragma once

#include <string>
#include <vector>

#include "polariton/run/run_config.hpp"

namespace polariton {

/// Three-level molecules, resonant cavity, kappa = gamma = 0.1, fixed
/// collective coupling 0.8 (vibrational units). N swept over {10, 50, 250}.
RunConfig preset_fig2a();
/// Two three-level species with vibrational gaps 1 and 1.2, kappa = gamma =
/// 0.05, collective coupling 0.6, truncated fractions at depths 0..2.
RunConfig preset_fig2b();

/// Throws ConfigError naming the available presets for an unknown name.
RunConfig run_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Single-species model used by the fig2a preset, for a given N.
EnsembleSpec fig2a_ensemble(int total_count);
/// Two-species model used by the fig2b preset, with N_A = N_B = per_species.
EnsembleSpec fig2b_ensemble(int per_species);

inline constexpr double kFig2aOverlap0 = 0.98;
inline constexpr double kFig2aOverlap1 = 0.19899;

}  // namespace polariton
