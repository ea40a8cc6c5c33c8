#include "polariton/run/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include <Eigen/Core>

#include "polariton/chi/susceptibility.hpp"
#include "polariton/diagrams/walks.hpp"
#include "polariton/errors.hpp"
#include "polariton/model/config_io.hpp"
#include "polariton/parallel.hpp"
#include "polariton/run/presets.hpp"
#include "polariton/spectra/spectrum.hpp"

namespace polariton {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Case {
    std::string label;  // "" or "N10"
    EnsembleSpec spec;
    std::vector<double> omegas;
};

std::vector<Case> cases(const RunConfig& config) {
    const EnsembleSpec base = resolve_ensemble(config);
    std::vector<Case> out;
    auto add = [&](std::string label, EnsembleSpec spec) {
        const FrequencyGrid grid = config.grid.value_or(default_grid(spec));
        out.push_back({std::move(label), std::move(spec), grid.values()});
    };
    if (config.sweep_n.empty()) {
        add("", base);
    } else {
        for (int n : config.sweep_n) add("N" + std::to_string(n), with_total_count(base, n));
    }
    return out;
}

std::string file_name(const std::string& stem, const std::string& label, const std::string& suffix) {
    return stem + (label.empty() ? "" : "_" + label) + suffix;
}

GreenResult run_engine(const EngineTag& tag, const EnsembleSpec& spec, const std::vector<double>& omegas) {
    switch (tag.kind) {
        case EngineKind::Dense:
            return dense_green(spec, omegas);
        case EngineKind::ContinuedFraction:
            return cf_full(spec, omegas);
        case EngineKind::Truncated:
            return cf_truncated(spec, omegas, tag.order);
        case EngineKind::ExpansionTerm:
            return tag.order == 0 ? d0(spec, omegas) : tag.order == 1 ? d1(spec, omegas) : d2_x2(spec, omegas);
        case EngineKind::ExpansionSum:
            return expansion_sum(spec, omegas, tag.order);
        case EngineKind::DysonSum:
            return dyson_partial_sum(spec, omegas, tag.order);
    }
    throw ConfigError("unsupported engine");
}

// Warns about ill-conditioned points; returns true on solve failures.
bool report(const GreenResult& g, const std::string& label) {
    const std::string where = g.engine.name() + (label.empty() ? "" : " (" + label + ")");
    if (!g.ill_conditioned.empty()) {
        std::cerr << "warning: " << where << ": " << g.ill_conditioned.size()
                  << " frequencies with condition estimate above 1e12\n";
    }
    if (!g.solve_failures.empty()) {
        std::cerr << "error: " << where << ": singular solve at " << g.solve_failures.size() << " frequencies\n";
        return true;
    }
    return false;
}

json complex_pair(cplx z) { return json::array({z.real(), z.imag()}); }

json peaks_json(const PeakTable& table) {
    json out = json::array();
    for (const auto& p : table.peaks) {
        out.push_back({{"position", p.position}, {"height", p.height}, {"fwhm", p.fwhm}, {"prominence", p.prominence}});
    }
    return out;
}

json modes_json(const EnsembleSpec& spec) {
    json out = json::object();
    const int top = std::min(1, spec.total_count() - 1);
    for (int order = 0; order <= top; ++order) {
        json list = json::array();
        for (cplx z : polariton_modes(spec, order).eigenvalues) {
            list.push_back({{"frequency", z.real()}, {"linewidth", -2.0 * z.imag()}});
        }
        out["order" + std::to_string(order)] = std::move(list);
    }
    return out;
}

class Writer {
public:
    explicit Writer(const RunConfig& config) : dir_(config.output_dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
    }

    void write(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        write_atomically(path, content);
        files_.push_back(path);
        names_.push_back(name);
    }

    void manifest(const RunConfig& config, const std::string& command, const json& hashes) {
        json echo = run_config_to_json(config);
        echo.erase("output_dir");
        if (config.preset) echo.erase("ensemble");
        if (!config.ensemble && !config.preset) echo["ensemble"] = ensemble_to_json(resolve_ensemble(config));
        echo.erase("ensemble_file");
        json doc;
        doc["manifest"] = {{"tool", "polariton"},
                           {"version", kVersion},
                           {"command", command},
                           {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                         "." + std::to_string(EIGEN_MINOR_VERSION)},
                           {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                        std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                        std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                           {"kernel", kernels::isa_name(kernels::best_isa())}};
        doc["config"] = std::move(echo);
        doc["spec_hashes"] = hashes;
        doc["outputs"] = names_;
        write("manifest.json", dump_json(doc));
    }

    RunOutputs outputs(bool failure) const { return {files_, failure}; }

private:
    fs::path dir_;
    std::vector<fs::path> files_;
    std::vector<std::string> names_;
};

std::string label_key(const std::string& label) { return label.empty() ? "run" : label; }

std::string chi_table(const EnsembleSpec& spec, const std::vector<double>& omegas) {
    const BlockChain chain(spec, std::min(2, spec.total_count()));
    std::vector<std::string> rows(omegas.size());
    parallel_for(omegas.size(), [&](std::size_t i) {
        const auto t1 = chi_term(chain, omegas[i], 0, ChiNormalization::Bare);
        const auto t3 = chi_term(chain, omegas[i], 1, ChiNormalization::Bare);
        const auto t5 = chi_term(chain, omegas[i], 2, ChiNormalization::Bare);
        char line[512];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", omegas[i],
                      t1.value.real(), t1.value.imag(), t3.value.real(), t3.value.imag(), t5.parts[0].real(),
                      t5.parts[0].imag(), t5.parts[1].real(), t5.parts[1].imag());
        rows[i] = line;
    });
    std::string out = "omega,re_chi1,im_chi1,re_chi3,im_chi3,re_chi5_a,im_chi5_a,re_chi5_b,im_chi5_b\n";
    for (const auto& r : rows) out += r;
    return out;
}

json dyson_document(const EnsembleSpec& spec, const std::vector<double>& omegas, int m_max) {
    int depth = 0;
    std::vector<std::vector<Walk>> by_order;
    for (int m = 1; m <= m_max; ++m) {
        by_order.push_back(enumerate_walks(m, spec.total_count()));
        for (const auto& w : by_order.back()) depth = std::max(depth, w.max_depth());
    }
    const BlockChain chain(spec, depth);
    json orders = json::array();
    for (int m = 1; m <= m_max; ++m) {
        const auto& walks = by_order[m - 1];
        json list = json::array();
        int reducible = 0;
        for (const auto& w : walks) {
            std::vector<cplx> values(omegas.size());
            parallel_for(omegas.size(), [&](std::size_t i) { values[i] = evaluate_walk(chain, w, omegas[i]).value; });
            json vals = json::array();
            for (cplx z : values) vals.push_back(complex_pair(z));
            const bool red = classify_walk(w) == WalkClass::Reducible;
            reducible += red;
            const LadderFamily fam = ladder_family(w);
            list.push_back({{"ladder", ladder_string(w)},
                            {"class", red ? "reducible" : "irreducible"},
                            {"family", fam == LadderFamily::Irreducible          ? "irreducible"
                                       : fam == LadderFamily::CollectiveRayleigh ? "collective_rayleigh"
                                                                                 : "reducible_mixed"},
                            {"n_scaling_exponent", w.raman_steps() / 2},
                            {"values", std::move(vals)}});
        }
        orders.push_back({{"m", m},
                          {"count", walks.size()},
                          {"reducible_count", reducible},
                          {"walks", std::move(list)}});
    }
    const GreenResult sum = dyson_partial_sum(spec, omegas, m_max);
    json partial = json::array();
    for (cplx z : sum.values) partial.push_back(complex_pair(z));
    return {{"omegas", omegas}, {"m_max", m_max}, {"orders", std::move(orders)}, {"partial_sum", std::move(partial)}};
}

std::vector<EngineTag> engine_tags(const RunConfig& config) {
    std::vector<EngineTag> tags;
    for (const auto& name : config.engines) tags.push_back(parse_engine(name));
    return tags;
}

}  // namespace

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

void write_atomically(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

RunOutputs run_spectrum(const RunConfig& config) {
    validate(config);
    const auto tags = engine_tags(config);
    const auto runs = cases(config);
    Writer writer(config);
    bool failure = false;
    json peaks = json::object(), modes = json::object(), sums = json::object(), hashes = json::object();
    for (const auto& c : runs) {
        const std::string key = label_key(c.label);
        hashes[key] = spec_hash(c.spec);
        for (const auto& tag : tags) {
            const GreenResult g = run_engine(tag, c.spec, c.omegas);
            failure |= report(g, c.label);
            const Spectrum s = compute_spectrum(g, c.spec.cavity.kappa);
            std::ostringstream csv;
            write_spectrum_csv(csv, s);
            writer.write(file_name("spectrum", c.label, "_" + tag.name() + ".csv"), csv.str());
            if (config.analyses.peaks) {
                PeakOptions opts;
                opts.min_prominence = config.peak_prominence;
                peaks[key][tag.name()] = peaks_json(find_peaks(s, opts));
            }
            if (config.analyses.sum_rule) {
                const SumRuleResult r = sum_rule(g, c.spec.cavity.omega_ph);
                if (r.grid_too_narrow) std::cerr << "warning: sum-rule tail above 10% for " << tag.name() << "\n";
                sums[key][tag.name()] = {{"total", r.total},
                                         {"quadrature", r.quadrature},
                                         {"tail", r.tail},
                                         {"grid_too_narrow", r.grid_too_narrow}};
            }
        }
        if (config.analyses.modes) modes[key] = modes_json(c.spec);
        if (config.analyses.chi) writer.write(file_name("chi", c.label, ".csv"), chi_table(c.spec, c.omegas));
        if (config.analyses.dyson) {
            writer.write(file_name("dyson", c.label, ".json"), dump_json(dyson_document(c.spec, c.omegas, config.dyson_order)));
        }
    }
    if (config.analyses.peaks) writer.write("peaks.json", dump_json(peaks));
    if (config.analyses.modes) writer.write("modes.json", dump_json(modes));
    if (config.analyses.sum_rule) writer.write("sum_rule.json", dump_json(sums));
    writer.manifest(config, "spectrum", hashes);
    return writer.outputs(failure);
}

RunOutputs run_compare(const RunConfig& config) {
    validate(config);
    if (config.engines.size() < 2) throw ConfigError("compare needs at least two engines", "/engines");
    const auto tags = engine_tags(config);
    const auto runs = cases(config);
    Writer writer(config);
    bool failure = false;
    json report_runs = json::array(), hashes = json::object();
    // max |a - b| per pair, per run, for the scaling table.
    std::vector<std::vector<double>> max_abs(tags.size() * tags.size());
    for (const auto& c : runs) {
        hashes[label_key(c.label)] = spec_hash(c.spec);
        std::vector<GreenResult> results;
        for (const auto& tag : tags) {
            results.push_back(run_engine(tag, c.spec, c.omegas));
            failure |= report(results.back(), c.label);
        }
        json pairs = json::array();
        for (std::size_t a = 0; a < tags.size(); ++a) {
            for (std::size_t b = a + 1; b < tags.size(); ++b) {
                double max_rel = 0.0, sum_rel = 0.0, max_diff = 0.0;
                for (std::size_t i = 0; i < c.omegas.size(); ++i) {
                    const cplx x = results[a].values[i], y = results[b].values[i];
                    const double diff = std::abs(x - y);
                    const double scale = std::max(std::abs(x), std::abs(y));
                    const double rel = scale > 0.0 ? diff / scale : 0.0;
                    max_rel = std::max(max_rel, rel);
                    sum_rel += rel;
                    max_diff = std::max(max_diff, diff);
                }
                max_abs[a * tags.size() + b].push_back(max_diff);
                pairs.push_back({{"a", tags[a].name()},
                                 {"b", tags[b].name()},
                                 {"max_rel_diff", max_rel},
                                 {"mean_rel_diff", sum_rel / double(c.omegas.size())},
                                 {"max_abs_diff", max_diff}});
            }
        }
        json entry = {{"N", c.spec.total_count()}, {"pairs", std::move(pairs)}};
        if (!c.label.empty()) entry["label"] = c.label;
        report_runs.push_back(std::move(entry));
    }
    json doc = {{"runs", std::move(report_runs)}};
    if (runs.size() > 1) {
        json scaling = json::array();
        for (std::size_t a = 0; a < tags.size(); ++a) {
            for (std::size_t b = a + 1; b < tags.size(); ++b) {
                const auto& d = max_abs[a * tags.size() + b];
                json steps = json::array();
                for (std::size_t r = 1; r < runs.size(); ++r) {
                    const double n0 = runs[r - 1].spec.total_count(), n1 = runs[r].spec.total_count();
                    const double ratio = d[r] > 0.0 ? d[r - 1] / d[r] : 0.0;
                    steps.push_back({{"from_N", n0},
                                     {"to_N", n1},
                                     {"ratio", ratio},
                                     {"exponent", ratio > 0.0 ? std::log(ratio) / std::log(n1 / n0) : 0.0}});
                }
                scaling.push_back({{"a", tags[a].name()}, {"b", tags[b].name()}, {"max_abs_diff", d}, {"steps", steps}});
            }
        }
        doc["scaling"] = std::move(scaling);
    }
    writer.write("compare.json", dump_json(doc));
    writer.manifest(config, "compare", hashes);
    return writer.outputs(failure);
}

RunOutputs run_chi(const RunConfig& config) {
    if (!config.preset && !config.ensemble && !config.ensemble_file) {
        throw ConfigError("no ensemble given (use an inline ensemble, ensemble_file or a preset)");
    }
    const auto runs = cases(config);
    Writer writer(config);
    json hashes = json::object();
    for (const auto& c : runs) {
        hashes[label_key(c.label)] = spec_hash(c.spec);
        writer.write(file_name("chi", c.label, ".csv"), chi_table(c.spec, c.omegas));
    }
    writer.manifest(config, "chi", hashes);
    return writer.outputs(false);
}

RunOutputs run_dyson(const RunConfig& config, int m_max) {
    if (m_max < 0 || m_max > 12) throw ConfigError("Dyson order must be in [0, 12]", "/dyson_order");
    if (!config.preset && !config.ensemble && !config.ensemble_file) {
        throw ConfigError("no ensemble given (use an inline ensemble, ensemble_file or a preset)");
    }
    const auto runs = cases(config);
    Writer writer(config);
    json hashes = json::object();
    for (const auto& c : runs) {
        hashes[label_key(c.label)] = spec_hash(c.spec);
        writer.write(file_name("dyson", c.label, ".json"), dump_json(dyson_document(c.spec, c.omegas, m_max)));
    }
    RunConfig echo = config;
    echo.dyson_order = m_max;
    writer.manifest(echo, "dyson", hashes);
    return writer.outputs(false);
}

RunOutputs run_modes(const RunConfig& config) {
    if (!config.preset && !config.ensemble && !config.ensemble_file) {
        throw ConfigError("no ensemble given (use an inline ensemble, ensemble_file or a preset)");
    }
    const auto runs = cases(config);
    Writer writer(config);
    json modes = json::object(), hashes = json::object();
    for (const auto& c : runs) {
        hashes[label_key(c.label)] = spec_hash(c.spec);
        modes[label_key(c.label)] = modes_json(c.spec);
    }
    writer.write("modes.json", dump_json(modes));
    writer.manifest(config, "modes", hashes);
    return writer.outputs(false);
}

RunConfig load_run_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON in ") + path.string() + ": " + e.what());
    }
    RunConfig config;
    if (doc.is_object() && doc.contains("manifest")) {
        if (!doc.contains("config")) throw ConfigError("manifest has no config", "/config");
        try {
            config = run_config_from_json(doc["config"]);
        } catch (const ConfigError& e) {
            throw ConfigError(e.message(), "/config" + e.pointer());
        }
    } else if (doc.is_object() && doc.contains("cavity")) {
        config.ensemble = ensemble_from_json(doc);
        config.engines = {"cf_full"};
    } else {
        config = run_config_from_json(doc);
    }
    if (config.ensemble_file && config.ensemble_file->is_relative()) {
        config.ensemble_file = path.parent_path() / *config.ensemble_file;
    }
    return config;
}

}  // namespace polariton
