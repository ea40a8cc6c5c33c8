#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "polariton/engines/green.hpp"

namespace polariton {

/// Absorption, transmission and reflection of the cavity on a grid.
struct Spectrum {
    std::vector<double> omegas;
    std::vector<cplx> green;
    std::vector<double> A;
    std::vector<double> T;
    std::vector<double> R;
    EngineTag engine;
};

Spectrum compute_spectrum(const GreenResult& green, double kappa,
                          kernels::Isa isa = kernels::best_isa());

struct Peak {
    double position;
    double height;
    double fwhm;  ///< NaN when a half-maximum crossing lies outside the grid
    double prominence;
};

struct PeakTable {
    std::vector<Peak> peaks;
    EngineTag engine;
};

struct PeakOptions {
    double min_height = 0.0;      ///< peaks must also be strictly positive
    double min_prominence = 1e-4;
};

/// Local maxima of `values` above both thresholds. Positions and heights are
/// refined by a 3-point parabola; widths come from linear interpolation of
/// the half-maximum crossings.
PeakTable find_peaks(const std::vector<double>& omegas, const std::vector<double>& values,
                     const PeakOptions& options = {});
/// Peaks of the absorption curve.
PeakTable find_peaks(const Spectrum& spectrum, const PeakOptions& options = {});

/// Complex mode frequencies of the depth-`order` Rayleigh box: eigenvalues of
/// [[H_ph,k - i kappa/2, V_k], [V_k^dagger, H_e,k - i gamma/2]], sorted by real
/// part. Real part is the frequency, -2 Im the linewidth.
struct PolaritonModes {
    int order = 0;
    std::vector<cplx> eigenvalues;
};

PolaritonModes polariton_modes(const EnsembleSpec& spec, int order);

struct SumRuleResult {
    double total = 0.0;     ///< quadrature + tails
    double quadrature = 0.0;
    double tail = 0.0;
    bool grid_too_narrow = false;  ///< tail above 10% of the total
};

/// -(1/pi) * integral of Im D by the trapezoid rule, with the weight beyond
/// each grid end estimated from a 1/(omega - omega_ph) tail. `omega_ph` is
/// where the tails are centred.
SumRuleResult sum_rule(const GreenResult& green, double omega_ph);

/// Writes `omega,re_D,im_D,A,T,R` rows with 17 significant digits.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

}  // namespace polariton
