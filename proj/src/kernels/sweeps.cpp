#include "polariton/kernels/sweeps.hpp"

#include <stdexcept>

namespace polariton::kernels {

void chain_green(const ScalarChain& chain, std::span<const double> omegas, std::span<std::complex<double>> out,
                 Isa isa) {
    if (out.size() != omegas.size()) throw std::invalid_argument("chain_green: output size mismatch");
    if (chain.nodes() == 0) throw std::invalid_argument("chain_green: empty chain");
    if (chain.half_width.size() != chain.nodes() || chain.coupling_sq.size() + 1 != chain.nodes()) {
        throw std::invalid_argument("chain_green: inconsistent chain arrays");
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (isa == Isa::Avx2 && isa_supported(Isa::Avx2)) {
        detail::chain_green_avx2(chain, omegas.data(), out.data(), omegas.size());
        return;
    }
#endif
    (void)isa;
    detail::chain_green_scalar(chain, omegas.data(), out.data(), omegas.size());
}

void cavity_response(std::span<const std::complex<double>> green, double kappa, std::span<double> absorption,
                     std::span<double> transmission, std::span<double> reflection, Isa isa) {
    const std::size_t n = green.size();
    if (absorption.size() != n || transmission.size() != n || reflection.size() != n) {
        throw std::invalid_argument("cavity_response: output size mismatch");
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (isa == Isa::Avx2 && isa_supported(Isa::Avx2)) {
        detail::cavity_response_avx2(green.data(), kappa, absorption.data(), transmission.data(), reflection.data(),
                                     n);
        return;
    }
#endif
    (void)isa;
    detail::cavity_response_scalar(green.data(), kappa, absorption.data(), transmission.data(), reflection.data(), n);
}

}  // namespace polariton::kernels
