#include "polariton/run/run_config.hpp"

#include <iostream>
#include <set>

#include "polariton/errors.hpp"
#include "polariton/model/config_io.hpp"
#include "polariton/run/presets.hpp"

namespace polariton {
namespace {

using nlohmann::json;

int parse_order(const std::string& name, const std::string& prefix) {
    const std::string digits = name.substr(prefix.size());
    if (digits.empty() || digits.size() > 4 || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError("unknown engine '" + name + "'");
    }
    return std::stoi(digits);
}

bool boolean(const json& doc, const std::string& key, bool fallback, const std::string& pointer) {
    if (!doc.contains(key)) return fallback;
    if (!doc.at(key).is_boolean()) throw ConfigError("expected true or false", pointer + "/" + key);
    return doc.at(key).get<bool>();
}

}  // namespace

EngineTag parse_engine(const std::string& name) {
    if (name == "dense") return {EngineKind::Dense, 0};
    if (name == "cf_full") return {EngineKind::ContinuedFraction, 0};
    if (name == "d0") return {EngineKind::ExpansionTerm, 0};
    if (name == "d1") return {EngineKind::ExpansionTerm, 1};
    if (name == "d2_x2") return {EngineKind::ExpansionTerm, 2};
    if (name == "d0+d1") return {EngineKind::ExpansionSum, 1};
    if (name == "d0+d1+d2_x2") return {EngineKind::ExpansionSum, 2};
    if (name.starts_with("cf_truncated")) return {EngineKind::Truncated, parse_order(name, "cf_truncated")};
    if (name.starts_with("dyson")) return {EngineKind::DysonSum, parse_order(name, "dyson")};
    throw ConfigError("unknown engine '" + name +
                      "' (expected dense, cf_full, cf_truncated<k>, d0, d1, d2_x2, d0+d1, d0+d1+d2_x2, dyson<m>)");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

FrequencyGrid default_grid(const EnsembleSpec& spec) {
    const double center = spec.lowest_excitation();
    double g = std::abs(spec.collective_coupling());
    if (g == 0.0) g = std::max({spec.cavity.kappa, spec.gamma, 1.0});
    return FrequencyGrid{center - 2.5 * g, center + spec.largest_vibrational_gap() + 2.5 * g, 4001};
}

json run_config_to_json(const RunConfig& config) {
    json doc = json::object();
    if (config.preset) doc["preset"] = *config.preset;
    if (config.ensemble) doc["ensemble"] = ensemble_to_json(*config.ensemble);
    if (config.ensemble_file) doc["ensemble_file"] = config.ensemble_file->string();
    doc["engines"] = config.engines;
    if (config.grid) doc["grid"] = {{"min", config.grid->min}, {"max", config.grid->max}, {"points", config.grid->points}};
    doc["analyses"] = {{"peaks", config.analyses.peaks},
                       {"modes", config.analyses.modes},
                       {"sum_rule", config.analyses.sum_rule},
                       {"chi", config.analyses.chi},
                       {"dyson", config.analyses.dyson}};
    doc["output_dir"] = config.output_dir.string();
    doc["sweep_n"] = config.sweep_n;
    doc["peak_prominence"] = config.peak_prominence;
    doc["dyson_order"] = config.dyson_order;
    return doc;
}

RunConfig run_config_from_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("run config must be a JSON object", "");
    static const std::set<std::string> allowed{"preset",   "ensemble",  "ensemble_file",   "engines",    "grid",
                                               "analyses", "output_dir", "sweep_n", "peak_prominence", "dyson_order"};
    for (const auto& item : doc.items()) {
        if (!allowed.contains(item.key())) throw ConfigError("unknown key '" + item.key() + "'", "/" + item.key());
    }
    RunConfig config;
    if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) throw ConfigError("expected a preset name", "/preset");
        config = run_preset(doc["preset"].get<std::string>());
    }
    if (doc.contains("ensemble")) {
        const EnsembleSpec spec = ensemble_from_json(doc["ensemble"], "/ensemble");
        if (config.preset) {
            std::cerr << "notice: preset '" << *config.preset << "' overrides the inline ensemble\n";
        } else {
            config.ensemble = spec;
        }
    }
    if (doc.contains("ensemble_file")) {
        if (!doc["ensemble_file"].is_string()) throw ConfigError("expected a path", "/ensemble_file");
        config.ensemble_file = doc["ensemble_file"].get<std::string>();
    }
    if (doc.contains("engines")) {
        const json& e = doc["engines"];
        if (!e.is_array()) throw ConfigError("expected an array of engine names", "/engines");
        config.engines.clear();
        for (std::size_t i = 0; i < e.size(); ++i) {
            const std::string at = "/engines/" + std::to_string(i);
            if (!e[i].is_string()) throw ConfigError("expected an engine name", at);
            try {
                parse_engine(e[i].get<std::string>());
            } catch (const ConfigError& err) {
                throw ConfigError(err.message(), at);
            }
            config.engines.push_back(e[i].get<std::string>());
        }
    }
    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        if (!g.is_object()) throw ConfigError("grid must be an object", "/grid");
        for (const auto& item : g.items()) {
            if (item.key() != "min" && item.key() != "max" && item.key() != "points") {
                throw ConfigError("unknown key '" + item.key() + "'", "/grid/" + item.key());
            }
        }
        for (const char* key : {"min", "max", "points"}) {
            if (!g.contains(key)) throw ConfigError(std::string("missing required key '") + key + "'", "/grid");
        }
        if (!g["min"].is_number()) throw ConfigError("expected a number", "/grid/min");
        if (!g["max"].is_number()) throw ConfigError("expected a number", "/grid/max");
        if (!g["points"].is_number_integer()) throw ConfigError("expected an integer", "/grid/points");
        FrequencyGrid grid{g["min"].get<double>(), g["max"].get<double>(), g["points"].get<int>()};
        if (grid.points < 2) throw ConfigError("grid needs at least 2 points", "/grid/points");
        if (!(grid.max > grid.min)) throw ConfigError("grid requires min < max", "/grid/max");
        config.grid = grid;
    }
    if (doc.contains("analyses")) {
        const json& a = doc["analyses"];
        if (!a.is_object()) throw ConfigError("analyses must be an object", "/analyses");
        for (const auto& item : a.items()) {
            static const std::set<std::string> keys{"peaks", "modes", "sum_rule", "chi", "dyson"};
            if (!keys.contains(item.key())) throw ConfigError("unknown key '" + item.key() + "'", "/analyses/" + item.key());
        }
        config.analyses.peaks = boolean(a, "peaks", config.analyses.peaks, "/analyses");
        config.analyses.modes = boolean(a, "modes", config.analyses.modes, "/analyses");
        config.analyses.sum_rule = boolean(a, "sum_rule", config.analyses.sum_rule, "/analyses");
        config.analyses.chi = boolean(a, "chi", config.analyses.chi, "/analyses");
        config.analyses.dyson = boolean(a, "dyson", config.analyses.dyson, "/analyses");
    }
    if (doc.contains("output_dir")) {
        if (!doc["output_dir"].is_string()) throw ConfigError("expected a path", "/output_dir");
        config.output_dir = doc["output_dir"].get<std::string>();
    }
    if (doc.contains("sweep_n")) {
        const json& s = doc["sweep_n"];
        if (!s.is_array()) throw ConfigError("expected an array of molecule counts", "/sweep_n");
        config.sweep_n.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (!s[i].is_number_integer() || s[i].get<long long>() < 1 || s[i].get<long long>() > 2000000000) {
                throw ConfigError("expected a positive integer", "/sweep_n/" + std::to_string(i));
            }
            config.sweep_n.push_back(s[i].get<int>());
        }
    }
    if (doc.contains("peak_prominence")) {
        if (!doc["peak_prominence"].is_number() || doc["peak_prominence"].get<double>() < 0) {
            throw ConfigError("expected a non-negative number", "/peak_prominence");
        }
        config.peak_prominence = doc["peak_prominence"].get<double>();
    }
    if (doc.contains("dyson_order")) {
        if (!doc["dyson_order"].is_number_integer() || doc["dyson_order"].get<int>() < 0 ||
            doc["dyson_order"].get<int>() > 12) {
            throw ConfigError("expected an integer in [0, 12]", "/dyson_order");
        }
        config.dyson_order = doc["dyson_order"].get<int>();
    }
    return config;
}

EnsembleSpec resolve_ensemble(const RunConfig& config) {
    if (config.preset) {
        const RunConfig preset = run_preset(*config.preset);
        return *preset.ensemble;
    }
    if (config.ensemble) return *config.ensemble;
    if (config.ensemble_file) return load_ensemble(*config.ensemble_file);
    throw ConfigError("no ensemble given (use an inline ensemble, ensemble_file or a preset)");
}

void validate(const RunConfig& config) {
    if (config.engines.empty()) throw ConfigError("engine list is empty", "/engines");
    for (std::size_t i = 0; i < config.engines.size(); ++i) {
        try {
            parse_engine(config.engines[i]);
        } catch (const ConfigError& e) {
            throw ConfigError(e.message(), "/engines/" + std::to_string(i));
        }
    }
    if (config.grid) {
        if (config.grid->points < 2) throw ConfigError("grid needs at least 2 points", "/grid/points");
        if (!(config.grid->max > config.grid->min)) throw ConfigError("grid requires min < max", "/grid");
    }
    if (!config.preset && !config.ensemble && !config.ensemble_file) {
        throw ConfigError("no ensemble given (use an inline ensemble, ensemble_file or a preset)");
    }
}

}  // namespace polariton
