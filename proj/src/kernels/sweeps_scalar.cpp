#include "polariton/kernels/sweeps.hpp"

namespace polariton::kernels::detail {

// Backward sweep t_L = 0, t_{i-1} = c_{i-1} / (w - E_i + i h_i - t_i), written
// with explicit real arithmetic so the vector variant can follow it step by
// step.
void chain_green_scalar(const ScalarChain& chain, const double* omegas, std::complex<double>* out,
                        std::size_t count) {
    const std::size_t last = chain.nodes() - 1;
    for (std::size_t w = 0; w < count; ++w) {
        double tr = 0.0, ti = 0.0;
        for (std::size_t i = last; i > 0; --i) {
            const double dr = omegas[w] - chain.energy[i] - tr;
            const double di = chain.half_width[i] - ti;
            const double scale = chain.coupling_sq[i - 1] / (dr * dr + di * di);
            tr = dr * scale;
            ti = -di * scale;
        }
        const double dr = omegas[w] - chain.energy[0] - tr;
        const double di = chain.half_width[0] - ti;
        const double inv = 1.0 / (dr * dr + di * di);
        out[w] = {dr * inv, -di * inv};
    }
}

void cavity_response_scalar(const std::complex<double>* green, double kappa, double* a, double* t, double* r,
                            std::size_t count) {
    const double q = 0.25 * kappa * kappa;
    for (std::size_t i = 0; i < count; ++i) {
        const double re = green[i].real(), im = green[i].imag();
        const double mag = re * re + im * im;
        t[i] = q * mag;
        r[i] = 1.0 + kappa * im + q * mag;
        a[i] = -0.5 * kappa * (kappa * mag + 2.0 * im);
    }
}

}  // namespace polariton::kernels::detail
