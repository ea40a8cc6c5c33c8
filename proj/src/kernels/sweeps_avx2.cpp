#include <immintrin.h>

#include "polariton/kernels/sweeps.hpp"

namespace polariton::kernels::detail {

// Four frequencies per lane group; the sweep over chain nodes is shared. Same
// operation order as the scalar kernel, no FMA contraction.
void chain_green_avx2(const ScalarChain& chain, const double* omegas, std::complex<double>* out,
                      std::size_t count) {
    const std::size_t last = chain.nodes() - 1;
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t w = 0;
    for (; w + 4 <= count; w += 4) {
        const __m256d om = _mm256_loadu_pd(omegas + w);
        __m256d tr = _mm256_setzero_pd();
        __m256d ti = _mm256_setzero_pd();
        for (std::size_t i = last; i > 0; --i) {
            const __m256d dr = _mm256_sub_pd(_mm256_sub_pd(om, _mm256_set1_pd(chain.energy[i])), tr);
            const __m256d di = _mm256_sub_pd(_mm256_set1_pd(chain.half_width[i]), ti);
            const __m256d mag = _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di));
            const __m256d scale = _mm256_div_pd(_mm256_set1_pd(chain.coupling_sq[i - 1]), mag);
            tr = _mm256_mul_pd(dr, scale);
            ti = _mm256_xor_pd(_mm256_mul_pd(di, scale), sign);
        }
        const __m256d dr = _mm256_sub_pd(_mm256_sub_pd(om, _mm256_set1_pd(chain.energy[0])), tr);
        const __m256d di = _mm256_sub_pd(_mm256_set1_pd(chain.half_width[0]), ti);
        const __m256d inv = _mm256_div_pd(one, _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di)));
        const __m256d re = _mm256_mul_pd(dr, inv);
        const __m256d im = _mm256_xor_pd(_mm256_mul_pd(di, inv), sign);
        // Interleave into (re, im) pairs.
        const __m256d lo = _mm256_unpacklo_pd(re, im);  // re0 im0 re2 im2
        const __m256d hi = _mm256_unpackhi_pd(re, im);  // re1 im1 re3 im3
        double* dst = reinterpret_cast<double*>(out + w);
        _mm256_storeu_pd(dst, _mm256_permute2f128_pd(lo, hi, 0x20));
        _mm256_storeu_pd(dst + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
    }
    if (w < count) chain_green_scalar(chain, omegas + w, out + w, count - w);
}

void cavity_response_avx2(const std::complex<double>* green, double kappa, double* a, double* t, double* r,
                          std::size_t count) {
    const __m256d q = _mm256_set1_pd(0.25 * kappa * kappa);
    const __m256d k = _mm256_set1_pd(kappa);
    const __m256d half_k = _mm256_set1_pd(-0.5 * kappa);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        const double* src = reinterpret_cast<const double*>(green + i);
        const __m256d p0 = _mm256_loadu_pd(src);      // re0 im0 re1 im1
        const __m256d p1 = _mm256_loadu_pd(src + 4);  // re2 im2 re3 im3
        const __m256d a0 = _mm256_permute2f128_pd(p0, p1, 0x20);  // re0 im0 re2 im2
        const __m256d a1 = _mm256_permute2f128_pd(p0, p1, 0x31);  // re1 im1 re3 im3
        const __m256d re = _mm256_unpacklo_pd(a0, a1);            // re0 re1 re2 re3
        const __m256d im = _mm256_unpackhi_pd(a0, a1);
        const __m256d mag = _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im));
        const __m256d qm = _mm256_mul_pd(q, mag);
        _mm256_storeu_pd(t + i, qm);
        _mm256_storeu_pd(r + i, _mm256_add_pd(_mm256_add_pd(one, _mm256_mul_pd(k, im)), qm));
        _mm256_storeu_pd(a + i,
                         _mm256_mul_pd(half_k, _mm256_add_pd(_mm256_mul_pd(k, mag), _mm256_mul_pd(two, im))));
    }
    if (i < count) cavity_response_scalar(green + i, kappa, a + i, t + i, r + i, count - i);
}

}  // namespace polariton::kernels::detail
