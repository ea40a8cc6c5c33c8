#include "polariton/model/spec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "polariton/errors.hpp"
#include "polariton/model/config_io.hpp"

namespace polariton {

int EnsembleSpec::total_count() const {
    int n = 0;
    for (const auto& s : species) n += s.count;
    return n;
}

double EnsembleSpec::collective_coupling() const { return lambda * std::sqrt(double(total_count())); }

double EnsembleSpec::lowest_excitation() const {
    double best = species.at(0).excitation_energy(0);
    for (const auto& s : species) best = std::min(best, s.excitation_energy(0));
    return best;
}

double EnsembleSpec::largest_vibrational_gap() const {
    double gap = 0.0;
    for (const auto& s : species) {
        if (s.ground_count() > 1) gap = std::max(gap, s.phonon_energy(1));
    }
    return gap;
}

namespace {

void require_increasing(const std::vector<double>& levels, const std::string& pointer) {
    if (levels.empty()) throw ConfigError("at least one level is required", pointer);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!std::isfinite(levels[i])) {
            throw ConfigError("level is not finite", pointer + "/" + std::to_string(i));
        }
        if (i > 0 && !(levels[i] > levels[i - 1])) {
            throw ConfigError("levels must be strictly increasing", pointer + "/" + std::to_string(i));
        }
    }
}

}  // namespace

void validate(const EnsembleSpec& spec) {
    if (!(spec.cavity.omega_ph > 0.0) || !std::isfinite(spec.cavity.omega_ph)) {
        throw ConfigError("omega_ph must be positive", "/cavity/omega_ph");
    }
    if (!(spec.cavity.kappa >= 0.0) || !std::isfinite(spec.cavity.kappa)) {
        throw ConfigError("kappa must be non-negative", "/cavity/kappa");
    }
    if (!std::isfinite(spec.lambda)) throw ConfigError("lambda must be finite", "/lambda");
    if (!(spec.gamma >= 0.0) || !std::isfinite(spec.gamma)) {
        throw ConfigError("gamma must be non-negative", "/gamma");
    }
    if (spec.species.empty()) throw ConfigError("at least one species is required", "/species");
    for (std::size_t s = 0; s < spec.species.size(); ++s) {
        const auto& sp = spec.species[s];
        const std::string at = "/species/" + std::to_string(s);
        if (sp.count < 1) throw ConfigError("count must be a positive integer", at + "/count");
        require_increasing(sp.ground_levels, at + "/ground_levels");
        require_increasing(sp.excited_levels, at + "/excited_levels");
        if (sp.fc_overlaps.rows() != sp.excited_count() || sp.fc_overlaps.cols() != sp.ground_count()) {
            throw ConfigError("fc_overlaps must be M_e x M_g = " + std::to_string(sp.excited_count()) +
                                  " x " + std::to_string(sp.ground_count()),
                              at + "/fc_overlaps");
        }
        for (Eigen::Index r = 0; r < sp.fc_overlaps.rows(); ++r) {
            if (!sp.fc_overlaps.row(r).allFinite()) {
                throw ConfigError("overlap is not finite", at + "/fc_overlaps/" + std::to_string(r));
            }
            if (sp.fc_overlaps.row(r).norm() > 1.0 + 1e-12) {
                throw ConfigError("overlap row norm exceeds 1", at + "/fc_overlaps/" + std::to_string(r));
            }
        }
    }
}

std::string spec_hash(const EnsembleSpec& spec) {
    const std::string text = ensemble_to_json(spec).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

EnsembleSpec with_total_count(const EnsembleSpec& spec, int total) {
    if (total < static_cast<int>(spec.species.size())) {
        throw ConfigError("total count " + std::to_string(total) + " is smaller than the number of species");
    }
    const int old_total = spec.total_count();
    EnsembleSpec out = spec;
    int assigned = 0;
    for (std::size_t s = 0; s < out.species.size(); ++s) {
        int c;
        if (s + 1 == out.species.size()) {
            c = total - assigned;
        } else {
            c = static_cast<int>(std::lround(double(spec.species[s].count) * total / old_total));
        }
        c = std::max(c, 1);
        out.species[s].count = c;
        assigned += c;
    }
    if (out.total_count() != total) throw ConfigError("cannot split total count across species");
    out.lambda = spec.collective_coupling() / std::sqrt(double(total));
    return out;
}

}  // namespace polariton
