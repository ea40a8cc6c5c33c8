#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "polariton/model/spec.hpp"

namespace polariton {

/// Parses the ensemble document. Unknown keys and invalid values raise
/// ConfigError carrying the JSON pointer of the offending field.
EnsembleSpec ensemble_from_json(const nlohmann::json& doc, const std::string& pointer = "");

/// Canonical form: complex overlaps as [re, im] pairs, keys in schema order.
nlohmann::json ensemble_to_json(const EnsembleSpec& spec);

EnsembleSpec load_ensemble(const std::filesystem::path& path);

}  // namespace polariton
