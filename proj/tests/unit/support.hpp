#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "polariton/model/spec.hpp"

namespace testing_support {

using polariton::cplx;
using polariton::EnsembleSpec;
using polariton::SpeciesSpec;

inline std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
    return out;
}

inline double max_rel_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(std::abs(a[i]), std::abs(b[i])));
    }
    return worst;
}

inline double max_abs(const std::vector<cplx>& a) {
    double worst = 0.0;
    for (const auto& z : a) worst = std::max(worst, std::abs(z));
    return worst;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline SpeciesSpec two_level(int count, double excitation) {
    SpeciesSpec s;
    s.count = count;
    s.ground_levels = {0.0};
    s.excited_levels = {excitation};
    s.fc_overlaps = Eigen::MatrixXcd::Ones(1, 1);
    return s;
}

inline EnsembleSpec single_species(const SpeciesSpec& s, double omega_ph, double kappa, double gamma, double lambda) {
    EnsembleSpec spec;
    spec.cavity = {omega_ph, kappa};
    spec.species = {s};
    spec.gamma = gamma;
    spec.lambda = lambda;
    return spec;
}

// Random ensemble with 1-2 species, M_g <= 3, M_e <= 2, N <= max_n and
// lambda sqrt(N) <= 1 (vibrational units).
inline EnsembleSpec random_spec(std::mt19937_64& rng, int max_n = 6) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    EnsembleSpec spec;
    const int species = pick(1, 2);
    int remaining = pick(species, max_n);
    for (int s = 0; s < species; ++s) {
        SpeciesSpec sp;
        sp.count = s + 1 == species ? remaining : pick(1, remaining - (species - s - 1));
        remaining -= sp.count;
        const int mg = pick(1, 3), me = pick(1, 2);
        double level = 0.0;
        for (int j = 0; j < mg; ++j) {
            sp.ground_levels.push_back(level);
            level += 0.7 + 0.6 * u(rng);
        }
        level = 9.5 + u(rng);
        for (int j = 0; j < me; ++j) {
            sp.excited_levels.push_back(level);
            level += 0.7 + 0.6 * u(rng);
        }
        sp.fc_overlaps.resize(me, mg);
        for (int r = 0; r < me; ++r) {
            double norm = 0.0;
            for (int c = 0; c < mg; ++c) {
                sp.fc_overlaps(r, c) = cplx(u(rng) - 0.3, 0.4 * (u(rng) - 0.5));
                norm += std::norm(sp.fc_overlaps(r, c));
            }
            sp.fc_overlaps.row(r) *= 0.95 / std::sqrt(norm);
        }
        spec.species.push_back(sp);
    }
    spec.cavity = {9.5 + u(rng), 0.02 + 0.1 * u(rng)};
    spec.gamma = 0.01 + 0.1 * u(rng);
    spec.lambda = (0.1 + 0.9 * u(rng)) / std::sqrt(double(spec.total_count()));
    return spec;
}

}  // namespace testing_support
