#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "polariton/kernels/isa.hpp"
#include "polariton/kernels/sweeps.hpp"
#include "polariton/model/blocks.hpp"
#include "polariton/model/dense.hpp"
#include "polariton/model/spec.hpp"

namespace polariton {

enum class EngineKind {
    Dense,              ///< dense linear-solve oracle
    ContinuedFraction,  ///< full recursion to depth N
    Truncated,          ///< recursion terminated at H_e,k
    ExpansionTerm,      ///< single 1/N term d_{N,k} (k = 2: X^2 part only)
    ExpansionSum,       ///< d_{N,0} + ... + d_{N,k}
    DysonSum,           ///< Dyson series through 2m-th order in the coupling
};

struct EngineTag {
    EngineKind kind = EngineKind::Dense;
    int order = 0;  ///< k for Truncated/Expansion*, m_max for DysonSum

    /// Short identifier used in file names and reports, e.g. "cf_truncated2".
    std::string name() const;
    bool operator==(const EngineTag&) const = default;
};

/// Photon Green's function D_N^R sampled on a frequency grid.
struct GreenResult {
    std::vector<double> omegas;
    std::vector<cplx> values;
    EngineTag engine;
    std::string spec_hash;
    /// Grid indices where an inner solve had condition estimate above
    /// kConditionLimit.
    std::vector<std::size_t> ill_conditioned;
    /// Grid indices where a solve was singular; the value there is NaN.
    std::vector<std::size_t> solve_failures;

    std::size_t size() const { return values.size(); }
};

inline constexpr double kConditionLimit = 1e12;

struct EngineOptions {
    /// Use the tridiagonal sweep kernel when every block is one-dimensional.
    bool use_scalar_chain = true;
    kernels::Isa isa = kernels::best_isa();
    std::size_t dense_limit = kDefaultDenseLimit;
};

/// Ground truth: solves (omega - H_1) x = e_vac for every omega.
GreenResult dense_green(const EnsembleSpec& spec, std::span<const double> omegas,
                        const EngineOptions& options = {});

/// Full matrix continued fraction, terminated at Sigma_ph,N.
GreenResult cf_full(const EnsembleSpec& spec, std::span<const double> omegas,
                    const EngineOptions& options = {});

/// Continued fraction terminated at H_e,k (bare resolvent there). Correct to
/// O(N^-k). Throws RangeError unless 0 <= k <= N-1.
GreenResult cf_truncated(const EnsembleSpec& spec, std::span<const double> omegas, int k,
                         const EngineOptions& options = {});

/// Thermodynamic-limit term: no Raman couplings.
GreenResult d0(const EnsembleSpec& spec, std::span<const double> omegas);

/// O(1/N) correction: sequential Stokes / anti-Stokes scattering through the
/// first-order polaritons. Requires N >= 2.
GreenResult d1(const EnsembleSpec& spec, std::span<const double> omegas);

/// Part of the O(1/N^2) term quadratic in the depth-1 excursion X. The part
/// linear in the depth-2 excursion has no closed form and is not included.
/// Requires N >= 2.
GreenResult d2_x2(const EnsembleSpec& spec, std::span<const double> omegas);

/// d0 + ... + dk for k in {0, 1, 2} (k = 2 adds d2_x2 only).
GreenResult expansion_sum(const EnsembleSpec& spec, std::span<const double> omegas, int k);

/// Pointwise a + b and a - b on identical grids; the tag is taken from the
/// argument.
GreenResult add(const GreenResult& a, const GreenResult& b, EngineTag tag);
GreenResult subtract(const GreenResult& a, const GreenResult& b, EngineTag tag);

// Single-frequency building blocks shared with the chi and diagrams modules.

struct SelfEnergySample {
    cplx value;
    bool ill_conditioned = false;
};

/// Sigma_e,0(omega) by the backward recursion. `truncation` < 0 means the full
/// chain; otherwise the chain is cut after H_e,truncation.
SelfEnergySample photon_self_energy(const BlockChain& chain, double omega, int truncation = -1);

/// 1 / (omega - omega_ph + i kappa/2), the bare cavity propagator.
cplx bare_photon_propagator(const EnsembleSpec& spec, double omega);

/// Node energies, half-widths and squared couplings of the chain when every
/// block is one-dimensional (one species, one excited level, at most two
/// ground levels); nullopt otherwise. Built in O(N) without enumerating
/// blocks. `truncation` as in photon_self_energy.
std::optional<kernels::ScalarChain> scalar_chain(const EnsembleSpec& spec, int truncation = -1);

/// Bare resolvent diagonal (omega - h + i loss/2)^{-1}.
Eigen::VectorXcd bare_resolvent(const Eigen::VectorXd& h, double omega, double loss);

}  // namespace polariton
