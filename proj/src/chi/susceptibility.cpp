#include "polariton/chi/susceptibility.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polariton/diagrams/walks.hpp"
#include "polariton/engines/green.hpp"
#include "polariton/errors.hpp"

namespace polariton {

cplx lorentzian(double omega, double omega_prime, double gamma_width) {
    return 1.0 / cplx(omega - omega_prime, gamma_width / 2);
}

SusceptibilityTerm chi_term(const BlockChain& chain, double omega, int l, ChiNormalization normalization) {
    if (l < 0 || l > 2) throw RangeError("closed-form susceptibility only for l = 0, 1, 2 (got " + std::to_string(l) + ")");
    const auto& spec = chain.spec();
    const int needed = std::min(l, chain.total_count());
    if (chain.max_depth() < needed) throw RangeError("chain too shallow for susceptibility order");

    const auto& b0 = chain.at(0);
    const Eigen::VectorXcd ge0 = bare_resolvent(b0.h_e, omega, spec.gamma);
    const Eigen::RowVectorXcd left = b0.V.row(0).cwiseProduct(ge0.transpose());  // V0 Ge0
    const Eigen::VectorXcd right = ge0.cwiseProduct(b0.V.row(0).adjoint());       // Ge0 V0^dagger

    SusceptibilityTerm term;
    term.order = 2 * l + 1;
    term.normalization = normalization;
    if (l == 0) {
        term.parts.push_back(-(left * b0.V.row(0).adjoint()).value());
    } else if (chain.total_count() < 1 || chain.photon_dim(1) == 0) {
        term.parts.assign(l == 1 ? 1 : 2, cplx{});
    } else {
        const auto& b1 = chain.at(1);
        const Eigen::VectorXcd gph1 = bare_resolvent(b1.h_ph, omega, spec.cavity.kappa);
        // Excursion into H_ph,1 and back: Ge0-weighted, one pair of Raman steps.
        const Eigen::MatrixXcd hop = b0.v * gph1.asDiagonal();  // v0 Gph1
        if (l == 1) {
            term.parts.push_back(-(left * hop * b0.v.adjoint() * right).value());
        } else {
            const Eigen::MatrixXcd loop = hop * b0.v.adjoint() * ge0.asDiagonal();  // v0 Gph1 v0^dagger Ge0
            const cplx raman = -(left * loop * hop * b0.v.adjoint() * right).value();
            cplx cascade{};
            if (b1.h_e.size() > 0) {
                const Eigen::VectorXcd ge1 = bare_resolvent(b1.h_e, omega, spec.gamma);
                const Eigen::MatrixXcd inner = b1.V * ge1.asDiagonal() * b1.V.adjoint();
                cascade = -(left * hop * inner * gph1.asDiagonal() * b0.v.adjoint() * right).value();
            }
            term.parts = {raman, cascade};
        }
    }
    term.value = cplx{};
    for (const cplx& p : term.parts) term.value += p;

    const double half = spec.cavity.omega_ph / 2;
    double scale = 1.0;
    if (normalization == ChiNormalization::SeriesNormalized) scale = std::pow(half, l);
    if (normalization == ChiNormalization::Bare) scale = std::pow(half, l + 1);
    if (scale != 1.0) {
        term.value /= scale;
        for (cplx& p : term.parts) p /= scale;
    }
    return term;
}

SusceptibilityTerm chi_term(const EnsembleSpec& spec, double omega, int l, ChiNormalization normalization) {
    validate(spec);
    if (l < 0 || l > 2) throw RangeError("closed-form susceptibility only for l = 0, 1, 2 (got " + std::to_string(l) + ")");
    const BlockChain chain(spec, std::min(l, spec.total_count()));
    return chi_term(chain, omega, l, normalization);
}

SeriesComparison self_energy_from_series(const EnsembleSpec& spec, double omega, int l_max) {
    validate(spec);
    if (l_max < 0) throw RangeError("l_max must be non-negative");
    const int total = spec.total_count();
    const BlockChain chain(spec, std::min(std::max(l_max, 2), total));
    SeriesComparison out;
    const SusceptibilityTerm first = chi_term(chain, omega, 0);
    if (l_max <= 2) {
        out.series = -first.value;
        for (int l = 1; l <= l_max; ++l) out.series -= chi_term(chain, omega, l).value;
    } else {
        const cplx g = bare_photon_propagator(spec, omega);
        for (int m = 1; m <= l_max + 1; ++m) {
            for (const Walk& walk : enumerate_walks(m, total)) {
                if (classify_walk(walk) == WalkClass::Reducible) continue;
                out.series += evaluate_walk(chain, walk, omega).value / (g * g);
            }
        }
    }
    const BlockChain full(spec);
    out.reference = photon_self_energy(full, omega).value;
    out.in_convergence_region =
        std::abs(first.value) < 0.3 * std::abs(cplx(omega - spec.cavity.omega_ph, spec.cavity.kappa / 2));
    return out;
}

}  // namespace polariton
