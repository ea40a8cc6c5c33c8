#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polariton {

using cplx = std::complex<double>;

/// Single lossy cavity mode. Frequencies are in energy units with hbar = 1.
struct CavitySpec {
    double omega_ph = 1.0;
    double kappa = 0.0;  ///< photon decay rate (full width)
};

/// One molecular species: N_s identical molecules with vibronic ladders in the
/// ground and excited electronic states.
struct SpeciesSpec {
    int count = 1;
    std::vector<double> ground_levels;   ///< epsilon_{g,j}, strictly increasing
    std::vector<double> excited_levels;  ///< epsilon_{e,j'}, strictly increasing
    /// Franck-Condon overlaps F(j', j) = <phi^e_j' | phi^g_j>, M_e x M_g.
    Eigen::MatrixXcd fc_overlaps;

    int ground_count() const { return static_cast<int>(ground_levels.size()); }
    int excited_count() const { return static_cast<int>(excited_levels.size()); }

    /// Energy of ground level j above the vibrationless ground state.
    double phonon_energy(int j) const { return ground_levels[j] - ground_levels[0]; }
    /// Transition energy g_0 -> e_j'.
    double excitation_energy(int jp) const { return excited_levels[jp] - ground_levels[0]; }
};

/// Cavity plus ensemble. All Hamiltonian matrix elements derive from this.
struct EnsembleSpec {
    CavitySpec cavity;
    std::vector<SpeciesSpec> species;
    double lambda = 0.0;  ///< single-molecule coupling
    double gamma = 0.0;   ///< excited-state linewidth

    int total_count() const;
    /// lambda * sqrt(N); derived, never stored.
    double collective_coupling() const;
    /// Lowest g_0 -> e_0 transition over all species.
    double lowest_excitation() const;
    /// Largest first vibrational gap over all species, 0 if no species has one.
    double largest_vibrational_gap() const;
};

/// Throws ConfigError when an invariant of the ensemble is violated.
void validate(const EnsembleSpec& spec);

/// Stable identifier of a spec: FNV-1a over its canonical JSON form, 16 hex
/// digits.
std::string spec_hash(const EnsembleSpec& spec);

/// Same ensemble with total molecule count `total` and fixed lambda*sqrt(N).
/// Species counts are rescaled proportionally (rounded, each at least 1).
EnsembleSpec with_total_count(const EnsembleSpec& spec, int total);

}  // namespace polariton
