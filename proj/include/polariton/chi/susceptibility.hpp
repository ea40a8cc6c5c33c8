#pragma once

#include <vector>

#include "polariton/model/blocks.hpp"

namespace polariton {

/// I(omega', Gamma) = 1 / (omega - omega' + i Gamma/2).
cplx lorentzian(double omega, double omega_prime, double gamma_width);

/// Scaling applied to a susceptibility term.
///  - WithPrefactor: the energy-valued term entering the photon self-energy,
///    D = 1/(omega - omega_ph + i kappa/2 + sum_l term_l).
///  - SeriesNormalized: term_l / (omega_ph/2)^l.
///  - Bare: term_l / (omega_ph/2)^(l+1), i.e. (omega_ph/2) chi^(1) = term_0.
enum class ChiNormalization { WithPrefactor, SeriesNormalized, Bare };

struct SusceptibilityTerm {
    int order = 1;  ///< 2l + 1
    cplx value;
    /// Separate contributions; for order 5: [pure Raman chain (1/N^2),
    /// cascade through the first-order polaritons (1/N)].
    std::vector<cplx> parts;
    ChiNormalization normalization = ChiNormalization::WithPrefactor;
};

/// Closed-form irreducible susceptibility term of order 2l+1 at one probe
/// frequency. Throws RangeError for l > 2.
SusceptibilityTerm chi_term(const BlockChain& chain, double omega, int l,
                            ChiNormalization normalization = ChiNormalization::WithPrefactor);
SusceptibilityTerm chi_term(const EnsembleSpec& spec, double omega, int l,
                            ChiNormalization normalization = ChiNormalization::WithPrefactor);

struct SeriesComparison {
    cplx series;     ///< -sum_{l <= l_max} term_l, comparable to Sigma_e,0
    cplx reference;  ///< Sigma_e,0 from the full recursion
    /// |term_0| < 0.3 |omega - omega_ph + i kappa/2|; outside this heuristic
    /// region the series is not expected to converge.
    bool in_convergence_region = false;

    double residual() const { return std::abs(series - reference); }
};

/// Partial sum of the irreducible series. l_max <= 2 uses the closed forms;
/// larger l_max sums irreducible chain walks with up to 2(l_max+1) steps.
SeriesComparison self_energy_from_series(const EnsembleSpec& spec, double omega, int l_max);

}  // namespace polariton
