#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "polariton/kernels/isa.hpp"

namespace polariton::kernels {

/// Tridiagonal chain with one state per node:
///   node i has complex energy  energy[i] - i*half_width[i],
///   nodes i and i+1 are coupled with |t_i|^2 = coupling_sq[i].
struct ScalarChain {
    std::vector<double> energy;
    std::vector<double> half_width;
    std::vector<double> coupling_sq;  ///< size energy.size() - 1

    std::size_t nodes() const { return energy.size(); }
};

/// out[w] = [(omega_w - H)^{-1}]_{00} by backward continued fraction.
void chain_green(const ScalarChain& chain, std::span<const double> omegas,
                 std::span<std::complex<double>> out, Isa isa);

/// Cavity observables from the photon Green's function:
///   T = k^2/4 |D|^2,  R = 1 + k Im D + k^2/4 |D|^2,  A = -(k/2)(k |D|^2 + 2 Im D).
void cavity_response(std::span<const std::complex<double>> green, double kappa,
                     std::span<double> absorption, std::span<double> transmission,
                     std::span<double> reflection, Isa isa);

namespace detail {
void chain_green_scalar(const ScalarChain& chain, const double* omegas, std::complex<double>* out,
                        std::size_t count);
void cavity_response_scalar(const std::complex<double>* green, double kappa, double* a, double* t,
                            double* r, std::size_t count);
#if defined(__x86_64__) || defined(_M_X64)
void chain_green_avx2(const ScalarChain& chain, const double* omegas, std::complex<double>* out,
                      std::size_t count);
void cavity_response_avx2(const std::complex<double>* green, double kappa, double* a, double* t,
                          double* r, std::size_t count);
#endif
}  // namespace detail

}  // namespace polariton::kernels
