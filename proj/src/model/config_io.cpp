#include "polariton/model/config_io.hpp"

#include <fstream>
#include <set>

#include "polariton/errors.hpp"

namespace polariton {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& pointer) {
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigError("unknown key '" + item.key() + "'", pointer + "/" + item.key());
        }
    }
}

const json& require(const json& obj, const std::string& key, const std::string& pointer) {
    if (!obj.contains(key)) throw ConfigError("missing required key '" + key + "'", pointer);
    return obj.at(key);
}

double number(const json& value, const std::string& pointer) {
    if (!value.is_number()) throw ConfigError("expected a number", pointer);
    return value.get<double>();
}

std::vector<double> number_list(const json& value, const std::string& pointer) {
    if (!value.is_array()) throw ConfigError("expected an array of numbers", pointer);
    std::vector<double> out;
    for (std::size_t i = 0; i < value.size(); ++i) out.push_back(number(value[i], pointer + "/" + std::to_string(i)));
    return out;
}

cplx overlap(const json& value, const std::string& pointer) {
    if (value.is_number()) return {value.get<double>(), 0.0};
    if (value.is_array() && value.size() == 2) {
        return {number(value[0], pointer + "/0"), number(value[1], pointer + "/1")};
    }
    throw ConfigError("overlap must be a number or an [re, im] pair", pointer);
}

SpeciesSpec species_from_json(const json& doc, const std::string& pointer) {
    if (!doc.is_object()) throw ConfigError("species entry must be an object", pointer);
    reject_unknown(doc, {"count", "ground_levels", "excited_levels", "fc_overlaps"}, pointer);
    SpeciesSpec s;
    const json& count = require(doc, "count", pointer);
    if (!count.is_number_integer()) throw ConfigError("count must be an integer", pointer + "/count");
    s.count = count.get<int>();
    s.ground_levels = number_list(require(doc, "ground_levels", pointer), pointer + "/ground_levels");
    s.excited_levels = number_list(require(doc, "excited_levels", pointer), pointer + "/excited_levels");
    const json& fc = require(doc, "fc_overlaps", pointer);
    const std::string fc_at = pointer + "/fc_overlaps";
    if (!fc.is_array()) throw ConfigError("fc_overlaps must be an array of rows", fc_at);
    const auto rows = static_cast<Eigen::Index>(fc.size());
    const auto cols = rows > 0 && fc[0].is_array() ? static_cast<Eigen::Index>(fc[0].size()) : 0;
    s.fc_overlaps.resize(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::string row_at = fc_at + "/" + std::to_string(r);
        const json& row = fc[r];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw ConfigError("rows of fc_overlaps must have equal length", row_at);
        }
        for (Eigen::Index c = 0; c < cols; ++c) s.fc_overlaps(r, c) = overlap(row[c], row_at + "/" + std::to_string(c));
    }
    return s;
}

}  // namespace

EnsembleSpec ensemble_from_json(const json& doc, const std::string& pointer) {
    if (!doc.is_object()) throw ConfigError("ensemble must be a JSON object", pointer);
    reject_unknown(doc, {"cavity", "lambda", "gamma", "species"}, pointer);
    EnsembleSpec spec;
    const json& cavity = require(doc, "cavity", pointer);
    if (!cavity.is_object()) throw ConfigError("cavity must be an object", pointer + "/cavity");
    reject_unknown(cavity, {"omega_ph", "kappa"}, pointer + "/cavity");
    spec.cavity.omega_ph = number(require(cavity, "omega_ph", pointer + "/cavity"), pointer + "/cavity/omega_ph");
    spec.cavity.kappa = number(require(cavity, "kappa", pointer + "/cavity"), pointer + "/cavity/kappa");
    spec.lambda = number(require(doc, "lambda", pointer), pointer + "/lambda");
    const json& species = require(doc, "species", pointer);
    if (!species.is_array()) throw ConfigError("species must be an array", pointer + "/species");
    for (std::size_t i = 0; i < species.size(); ++i) {
        spec.species.push_back(species_from_json(species[i], pointer + "/species/" + std::to_string(i)));
    }
    try {
        if (doc.contains("gamma")) {
            spec.gamma = number(doc.at("gamma"), pointer + "/gamma");
        } else {
            validate(spec);
            const double gap = spec.largest_vibrational_gap();
            spec.gamma = 1e-3 * (gap > 0.0 ? gap : spec.cavity.omega_ph);
        }
        validate(spec);
    } catch (const ConfigError& e) {
        if (pointer.empty()) throw;
        throw ConfigError(e.message(), pointer + e.pointer());
    }
    return spec;
}

json ensemble_to_json(const EnsembleSpec& spec) {
    json species = json::array();
    for (const auto& s : spec.species) {
        json fc = json::array();
        for (Eigen::Index r = 0; r < s.fc_overlaps.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < s.fc_overlaps.cols(); ++c) {
                row.push_back(json::array({s.fc_overlaps(r, c).real(), s.fc_overlaps(r, c).imag()}));
            }
            fc.push_back(std::move(row));
        }
        json entry = json::object();
        entry["count"] = s.count;
        entry["ground_levels"] = s.ground_levels;
        entry["excited_levels"] = s.excited_levels;
        entry["fc_overlaps"] = std::move(fc);
        species.push_back(std::move(entry));
    }
    json doc = json::object();
    doc["cavity"] = {{"omega_ph", spec.cavity.omega_ph}, {"kappa", spec.cavity.kappa}};
    doc["lambda"] = spec.lambda;
    doc["gamma"] = spec.gamma;
    doc["species"] = std::move(species);
    return doc;
}

EnsembleSpec load_ensemble(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ensemble file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON in ") + path.string() + ": " + e.what());
    }
    return ensemble_from_json(doc);
}

}  // namespace polariton
