#include "polariton/model/dense.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "polariton/errors.hpp"
#include "polariton/model/blocks.hpp"

namespace polariton {
namespace {

// Coefficient k of the generating function of one species' phonon
// configurations: ways to put k phonons into `channels` levels, k <= cap.
std::vector<double> species_series(int channels, int cap, int degree) {
    std::vector<double> p(static_cast<std::size_t>(degree) + 1, 0.0);
    if (channels == 0) {
        p[0] = 1.0;
        return p;
    }
    for (int k = 0; k <= std::min(cap, degree); ++k) {
        // C(k + channels - 1, channels - 1)
        double c = 1.0;
        for (int i = 1; i < channels; ++i) c = c * (k + i) / i;
        p[k] = std::round(c);
    }
    return p;
}

std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

double dimension_estimate(const EnsembleSpec& spec, int depth_cap) {
    const int total = spec.total_count();
    const int photon_top = std::min(depth_cap, total);
    const int excited_top = std::min(depth_cap, total - 1);
    const int degree = std::max(photon_top, 0);

    std::vector<double> photon(static_cast<std::size_t>(degree) + 1, 0.0);
    photon[0] = 1.0;
    for (const auto& s : spec.species) photon = multiply(photon, species_series(s.ground_count() - 1, s.count, degree));
    double dim = 0.0;
    for (int n = 0; n <= photon_top; ++n) dim += photon[n];

    for (std::size_t excited = 0; excited < spec.species.size(); ++excited) {
        std::vector<double> poly(static_cast<std::size_t>(degree) + 1, 0.0);
        poly[0] = 1.0;
        for (std::size_t s = 0; s < spec.species.size(); ++s) {
            const auto& sp = spec.species[s];
            const int cap = s == excited ? sp.count - 1 : sp.count;
            poly = multiply(poly, species_series(sp.ground_count() - 1, cap, degree));
        }
        for (int n = 0; n <= excited_top; ++n) dim += poly[n] * spec.species[excited].excited_count();
    }
    return dim;
}

}  // namespace

std::size_t dense_dimension(const EnsembleSpec& spec, std::optional<int> max_depth) {
    const double d = dimension_estimate(spec, max_depth.value_or(spec.total_count()));
    return d >= 1e18 ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(d);
}

DenseHamiltonian assemble_dense_h1(const EnsembleSpec& spec, std::optional<int> max_depth, std::size_t limit) {
    const int total = spec.total_count();
    const int cap = std::min(max_depth.value_or(total), total);
    if (cap < 0) throw RangeError("dense assembly depth cap must be non-negative");
    const std::size_t dim = dense_dimension(spec, cap);
    if (dim > limit) {
        throw SizingError("dense H1 dimension " + std::to_string(dim) + " exceeds limit " + std::to_string(limit), dim,
                          limit);
    }
    const BlockChain chain(spec, cap);

    // Offsets in the order ph_0, e_0, ph_1, e_1, ..., ph_cap, e_cap.
    std::vector<Eigen::Index> ph_offset(cap + 1), e_offset(cap + 1);
    Eigen::Index at = 0;
    for (int n = 0; n <= cap; ++n) {
        ph_offset[n] = at;
        at += chain.photon_dim(n);
        e_offset[n] = at;
        at += chain.excited_dim(n);
    }

    DenseHamiltonian out;
    out.matrix = Eigen::MatrixXcd::Zero(at, at);
    const cplx photon_loss(0.0, -spec.cavity.kappa / 2);
    const cplx excited_loss(0.0, -spec.gamma / 2);
    for (int n = 0; n <= cap; ++n) {
        const auto& b = chain.at(n);
        const Eigen::Index np = b.h_ph.size(), ne = b.h_e.size();
        for (Eigen::Index i = 0; i < np; ++i) out.matrix(ph_offset[n] + i, ph_offset[n] + i) = b.h_ph(i) + photon_loss;
        for (Eigen::Index i = 0; i < ne; ++i) out.matrix(e_offset[n] + i, e_offset[n] + i) = b.h_e(i) + excited_loss;
        if (ne > 0) {
            out.matrix.block(ph_offset[n], e_offset[n], np, ne) = b.V;
            out.matrix.block(e_offset[n], ph_offset[n], ne, np) = b.V.adjoint();
        }
        if (n < cap && ne > 0 && chain.photon_dim(n + 1) > 0) {
            const Eigen::Index nn = chain.photon_dim(n + 1);
            out.matrix.block(e_offset[n], ph_offset[n + 1], ne, nn) = b.v;
            out.matrix.block(ph_offset[n + 1], e_offset[n], nn, ne) = b.v.adjoint();
        }
    }
    out.vacuum_index = ph_offset[0];
    return out;
}

}  // namespace polariton
