#include "polariton/engines/green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "polariton/errors.hpp"
#include "polariton/parallel.hpp"

namespace polariton {
namespace {

constexpr cplx kI{0.0, 1.0};
const cplx kNaN{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};

// omega - h + i*half, as a complex vector.
Eigen::VectorXcd shifted(const Eigen::VectorXd& h, double omega, double half) {
    Eigen::VectorXcd out(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i) out(i) = cplx(omega - h(i), half);
    return out;
}

// Partial-pivoting solves that remember whether any system was badly
// conditioned or singular.
struct Solver {
    bool ill = false;
    bool failed = false;

    Eigen::MatrixXcd solve(const Eigen::MatrixXcd& m, const Eigen::MatrixXcd& rhs) {
        if (m.rows() == 0) return Eigen::MatrixXcd(0, rhs.cols());
        const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
        const double rcond = lu.rcond();
        if (!(rcond > 0.0) || !std::isfinite(rcond)) {
            failed = true;
            return Eigen::MatrixXcd::Constant(m.rows(), rhs.cols(), kNaN);
        }
        if (rcond < 1.0 / kConditionLimit) ill = true;
        return lu.solve(rhs);
    }
};

struct Sample {
    cplx value;
    bool ill = false;
    bool failed = false;
};

template <class Fn>
GreenResult sweep(const EnsembleSpec& spec, std::span<const double> omegas, EngineTag tag, Fn&& fn) {
    GreenResult out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.values.assign(omegas.size(), cplx{});
    out.engine = tag;
    out.spec_hash = spec_hash(spec);
    std::vector<char> ill(omegas.size(), 0), failed(omegas.size(), 0);
    parallel_for(omegas.size(), [&](std::size_t i) {
        const Sample s = fn(omegas[i]);
        const bool bad = s.failed || !std::isfinite(s.value.real()) || !std::isfinite(s.value.imag());
        out.values[i] = bad ? kNaN : s.value;
        ill[i] = s.ill;
        failed[i] = bad;
    });
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (ill[i]) out.ill_conditioned.push_back(i);
        if (failed[i]) out.solve_failures.push_back(i);
    }
    return out;
}

GreenResult sweep_scalar_chain(const EnsembleSpec& spec, const kernels::ScalarChain& chain,
                               std::span<const double> omegas, EngineTag tag, kernels::Isa isa) {
    GreenResult out;
    out.omegas.assign(omegas.begin(), omegas.end());
    out.values.assign(omegas.size(), cplx{});
    out.engine = tag;
    out.spec_hash = spec_hash(spec);
    // Chunked so each worker runs the vector kernel over a contiguous slice.
    const std::size_t chunk = 256;
    const std::size_t chunks = (omegas.size() + chunk - 1) / chunk;
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t begin = c * chunk;
        const std::size_t len = std::min(chunk, omegas.size() - begin);
        kernels::chain_green(chain, omegas.subspan(begin, len), std::span<cplx>(out.values).subspan(begin, len), isa);
    });
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (!std::isfinite(out.values[i].real()) || !std::isfinite(out.values[i].imag())) {
            out.values[i] = kNaN;
            out.solve_failures.push_back(i);
        }
    }
    return out;
}

void require_ascending_span(std::span<const double> omegas) {
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (!std::isfinite(omegas[i])) throw ConfigError("frequency grid contains a non-finite value");
        if (i > 0 && !(omegas[i] > omegas[i - 1])) throw ConfigError("frequency grid must be strictly ascending");
    }
}

struct ExpansionSample {
    cplx d0, d1, d2;
    bool ill = false;
    bool failed = false;
};

ExpansionSample expansion_terms(const BlockChain& chain, double omega, int order) {
    const auto& spec = chain.spec();
    const double hk = spec.cavity.kappa / 2;
    ExpansionSample out;
    const auto& b0 = chain.at(0);
    const cplx gph0 = bare_photon_propagator(spec, omega);
    const Eigen::VectorXcd ge0 = bare_resolvent(b0.h_e, omega, spec.gamma);
    const Eigen::RowVectorXcd u = b0.V.row(0);
    const Eigen::RowVectorXcd w = u.cwiseProduct(ge0.transpose());  // V0 Ge0
    const cplx rayleigh = (w * u.adjoint())(0, 0);
    out.d0 = 1.0 / (cplx(omega - spec.cavity.omega_ph, hk) - rayleigh);
    if (order == 0) return out;

    const auto& b1 = chain.at(1);
    const Eigen::VectorXcd ge1 = bare_resolvent(b1.h_e, omega, spec.gamma);
    Eigen::MatrixXcd m1 = -(b1.V * ge1.asDiagonal() * b1.V.adjoint());
    m1.diagonal() += shifted(b1.h_ph, omega, hk);
    Solver solver;
    const Eigen::MatrixXcd y = solver.solve(m1, b0.v.adjoint());
    const Eigen::MatrixXcd x = b0.v * y * ge0.asDiagonal();
    const Eigen::VectorXcd ud = u.adjoint();
    const Eigen::VectorXcd xu = x * ud;
    const cplx s1 = (w * xu).value();
    out.d1 = out.d0 * out.d0 * s1;
    out.ill = solver.ill;
    out.failed = solver.failed;
    if (order == 1) return out;

    const cplx s2 = (w * (x * xu)).value();
    const cplx a = rayleigh * gph0, c1 = s1 * gph0, c2 = s2 * gph0;
    const cplx one_minus = 1.0 - a;
    out.d2 = gph0 * c1 * c1 / (one_minus * one_minus * one_minus) + gph0 * c2 / (one_minus * one_minus);
    return out;
}

GreenResult expansion(const EnsembleSpec& spec, std::span<const double> omegas, int order, bool sum) {
    validate(spec);
    require_ascending_span(omegas);
    if (order < 0 || order > 2) throw RangeError("expansion order must be 0, 1 or 2");
    if (order >= 1 && spec.total_count() < 2) throw RangeError("d1 and d2_x2 need N >= 2");
    const BlockChain chain(spec, order == 0 ? 0 : 1);
    const EngineTag tag{sum ? EngineKind::ExpansionSum : EngineKind::ExpansionTerm, order};
    return sweep(spec, omegas, tag, [&](double omega) {
        const ExpansionSample e = expansion_terms(chain, omega, order);
        cplx value;
        if (!sum) {
            value = order == 0 ? e.d0 : order == 1 ? e.d1 : e.d2;
        } else {
            value = e.d0;
            if (order >= 1) value += e.d1;
            if (order >= 2) value += e.d2;
        }
        return Sample{value, e.ill, e.failed};
    });
}

GreenResult continued_fraction(const EnsembleSpec& spec, std::span<const double> omegas, int truncation,
                               const EngineOptions& options) {
    validate(spec);
    require_ascending_span(omegas);
    const EngineTag tag = truncation < 0 ? EngineTag{EngineKind::ContinuedFraction, 0}
                                         : EngineTag{EngineKind::Truncated, truncation};
    if (options.use_scalar_chain) {
        if (auto chain = scalar_chain(spec, truncation)) {
            return sweep_scalar_chain(spec, *chain, omegas, tag, options.isa);
        }
    }
    const BlockChain chain(spec, truncation);
    return sweep(spec, omegas, tag, [&](double omega) {
        const SelfEnergySample s = photon_self_energy(chain, omega, truncation);
        const cplx value = 1.0 / (cplx(omega - spec.cavity.omega_ph, spec.cavity.kappa / 2) - s.value);
        return Sample{value, s.ill_conditioned, false};
    });
}

}  // namespace

std::string EngineTag::name() const {
    switch (kind) {
        case EngineKind::Dense:
            return "dense";
        case EngineKind::ContinuedFraction:
            return "cf_full";
        case EngineKind::Truncated:
            return "cf_truncated" + std::to_string(order);
        case EngineKind::ExpansionTerm:
            return order == 2 ? "d2_x2" : "d" + std::to_string(order);
        case EngineKind::ExpansionSum:
            return order == 0 ? "d0" : order == 1 ? "d0+d1" : "d0+d1+d2_x2";
        case EngineKind::DysonSum:
            return "dyson" + std::to_string(order);
    }
    return "unknown";
}

cplx bare_photon_propagator(const EnsembleSpec& spec, double omega) {
    return 1.0 / cplx(omega - spec.cavity.omega_ph, spec.cavity.kappa / 2);
}

Eigen::VectorXcd bare_resolvent(const Eigen::VectorXd& h, double omega, double loss) {
    Eigen::VectorXcd out(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i) out(i) = 1.0 / cplx(omega - h(i), loss / 2);
    return out;
}

std::optional<kernels::ScalarChain> scalar_chain(const EnsembleSpec& spec, int truncation) {
    if (spec.species.size() != 1) return std::nullopt;
    const SpeciesSpec& s = spec.species[0];
    if (s.excited_count() != 1 || s.ground_count() > 2) return std::nullopt;
    const int total = s.count;
    if (truncation > total - 1) {
        throw RangeError("truncation depth " + std::to_string(truncation) + " outside [0, " +
                         std::to_string(total - 1) + "]");
    }
    const double l2 = spec.lambda * spec.lambda;
    const double c0 = std::norm(s.fc_overlaps(0, 0));
    const double hk = spec.cavity.kappa / 2, hg = spec.gamma / 2;
    const double e0 = s.excitation_energy(0);

    kernels::ScalarChain chain;
    auto photon = [&](int n, double gap) {
        chain.energy.push_back(spec.cavity.omega_ph + n * gap);
        chain.half_width.push_back(hk);
    };
    auto excited = [&](int n, double gap) {
        chain.coupling_sq.push_back(l2 * (total - n) * c0);
        chain.energy.push_back(e0 + n * gap);
        chain.half_width.push_back(hg);
    };
    if (s.ground_count() == 1) {
        photon(0, 0.0);
        excited(0, 0.0);
        return chain;
    }
    const double gap = s.phonon_energy(1);
    const double c1 = std::norm(s.fc_overlaps(0, 1));
    const int last = truncation < 0 ? total : truncation;
    const std::size_t nodes = 2 * static_cast<std::size_t>(last) + (truncation < 0 ? 1 : 2);
    chain.energy.reserve(nodes);
    chain.half_width.reserve(nodes);
    chain.coupling_sq.reserve(nodes - 1);
    for (int n = 0; n <= last; ++n) {
        if (n > 0) chain.coupling_sq.push_back(l2 * n * c1);
        photon(n, gap);
        if (n < total) excited(n, gap);
        if (truncation >= 0 && n == truncation) break;
    }
    return chain;
}

SelfEnergySample photon_self_energy(const BlockChain& chain, double omega, int truncation) {
    const auto& spec = chain.spec();
    const int total = chain.total_count();
    const double hk = spec.cavity.kappa / 2, hg = spec.gamma / 2;
    Solver solver;
    int start;
    Eigen::MatrixXcd sigma_e;  // self-energy on photon block `start` from deeper blocks
    if (truncation < 0) {
        if (chain.max_depth() < total) throw RangeError("full recursion needs blocks up to depth N");
        start = total;
        sigma_e = Eigen::MatrixXcd::Zero(chain.photon_dim(total), chain.photon_dim(total));
    } else {
        if (truncation > total - 1) {
            throw RangeError("truncation depth " + std::to_string(truncation) + " outside [0, " +
                             std::to_string(total - 1) + "]");
        }
        if (chain.max_depth() < truncation) throw RangeError("chain not built to the truncation depth");
        start = truncation;
        const auto& b = chain.at(start);
        sigma_e = b.V * bare_resolvent(b.h_e, omega, spec.gamma).asDiagonal() * b.V.adjoint();
    }
    for (int k = start; k >= 1; --k) {
        const auto& up = chain.at(k);
        const auto& down = chain.at(k - 1);
        Eigen::MatrixXcd m = -sigma_e;
        m.diagonal() += shifted(up.h_ph, omega, hk);
        const Eigen::MatrixXcd sigma_ph = down.v * solver.solve(m, down.v.adjoint());
        Eigen::MatrixXcd me = -sigma_ph;
        me.diagonal() += shifted(down.h_e, omega, hg);
        sigma_e = down.V * solver.solve(me, down.V.adjoint());
    }
    SelfEnergySample out;
    out.value = solver.failed ? kNaN : sigma_e(0, 0);
    out.ill_conditioned = solver.ill;
    return out;
}

GreenResult dense_green(const EnsembleSpec& spec, std::span<const double> omegas, const EngineOptions& options) {
    validate(spec);
    require_ascending_span(omegas);
    const DenseHamiltonian h = assemble_dense_h1(spec, std::nullopt, options.dense_limit);
    const Eigen::Index dim = h.matrix.rows();
    Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(dim);
    unit(h.vacuum_index) = 1.0;
    return sweep(spec, omegas, EngineTag{EngineKind::Dense, 0}, [&](double omega) {
        Eigen::MatrixXcd m = -h.matrix;
        m.diagonal().array() += omega;
        Solver solver;
        const Eigen::MatrixXcd x = solver.solve(m, unit);
        return Sample{x(h.vacuum_index, 0), solver.ill, solver.failed};
    });
}

GreenResult cf_full(const EnsembleSpec& spec, std::span<const double> omegas, const EngineOptions& options) {
    return continued_fraction(spec, omegas, -1, options);
}

GreenResult cf_truncated(const EnsembleSpec& spec, std::span<const double> omegas, int k,
                         const EngineOptions& options) {
    validate(spec);
    if (k < 0 || k > spec.total_count() - 1) {
        throw RangeError("truncation depth " + std::to_string(k) + " outside [0, " +
                         std::to_string(spec.total_count() - 1) + "]");
    }
    return continued_fraction(spec, omegas, k, options);
}

GreenResult d0(const EnsembleSpec& spec, std::span<const double> omegas) {
    return expansion(spec, omegas, 0, false);
}

GreenResult d1(const EnsembleSpec& spec, std::span<const double> omegas) {
    return expansion(spec, omegas, 1, false);
}

GreenResult d2_x2(const EnsembleSpec& spec, std::span<const double> omegas) {
    return expansion(spec, omegas, 2, false);
}

GreenResult expansion_sum(const EnsembleSpec& spec, std::span<const double> omegas, int k) {
    return expansion(spec, omegas, k, true);
}

namespace {

GreenResult combine(const GreenResult& a, const GreenResult& b, EngineTag tag, double sign) {
    if (a.omegas != b.omegas) throw ConfigError("cannot combine results on different grids");
    GreenResult out = a;
    out.engine = tag;
    for (std::size_t i = 0; i < a.values.size(); ++i) out.values[i] = a.values[i] + sign * b.values[i];
    out.ill_conditioned.insert(out.ill_conditioned.end(), b.ill_conditioned.begin(), b.ill_conditioned.end());
    out.solve_failures.insert(out.solve_failures.end(), b.solve_failures.begin(), b.solve_failures.end());
    std::sort(out.ill_conditioned.begin(), out.ill_conditioned.end());
    out.ill_conditioned.erase(std::unique(out.ill_conditioned.begin(), out.ill_conditioned.end()),
                              out.ill_conditioned.end());
    std::sort(out.solve_failures.begin(), out.solve_failures.end());
    out.solve_failures.erase(std::unique(out.solve_failures.begin(), out.solve_failures.end()),
                             out.solve_failures.end());
    return out;
}

}  // namespace

GreenResult add(const GreenResult& a, const GreenResult& b, EngineTag tag) { return combine(a, b, tag, 1.0); }

GreenResult subtract(const GreenResult& a, const GreenResult& b, EngineTag tag) {
    return combine(a, b, tag, -1.0);
}

}  // namespace polariton
