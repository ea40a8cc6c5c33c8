#include "polariton/spectra/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "polariton/errors.hpp"

namespace polariton {

Spectrum compute_spectrum(const GreenResult& green, double kappa, kernels::Isa isa) {
    Spectrum s;
    s.omegas = green.omegas;
    s.green = green.values;
    s.engine = green.engine;
    const std::size_t n = green.values.size();
    s.A.resize(n);
    s.T.resize(n);
    s.R.resize(n);
    kernels::cavity_response(green.values, kappa, s.A, s.T, s.R, isa);
    return s;
}

namespace {

double crossing(double x0, double y0, double x1, double y1, double level) {
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace

PeakTable find_peaks(const std::vector<double>& omegas, const std::vector<double>& values,
                     const PeakOptions& options) {
    if (omegas.size() != values.size()) throw ConfigError("find_peaks: grid and values differ in length");
    PeakTable table;
    const std::size_t n = values.size();
    if (n < 3) return table;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double y = values[i];
        if (!(y > values[i - 1] && y >= values[i + 1])) continue;
        // Skip the left edge of a plateau that later rises.
        std::size_t j = i;
        while (j + 1 < n && values[j + 1] == y) ++j;
        if (j + 1 >= n || values[j + 1] > y) continue;

        // Prominence: lowest point on each side before a higher sample.
        double left_min = y;
        for (std::size_t k = i; k-- > 0;) {
            if (values[k] > y) break;
            left_min = std::min(left_min, values[k]);
        }
        double right_min = y;
        for (std::size_t k = j + 1; k < n; ++k) {
            if (values[k] > y) break;
            right_min = std::min(right_min, values[k]);
        }
        const double prominence = y - std::max(left_min, right_min);

        double position = omegas[i];
        double height = y;
        if (j == i) {
            const double y0 = values[i - 1], y2 = values[i + 1];
            const double curvature = y0 - 2.0 * y + y2;
            if (curvature < 0.0) {
                const double h = 0.5 * (omegas[i + 1] - omegas[i - 1]);
                const double delta = 0.5 * (y0 - y2) / curvature;
                position = omegas[i] + delta * h;
                height = y - 0.25 * (y0 - y2) * delta;
            }
        } else {
            position = 0.5 * (omegas[i] + omegas[j]);
        }
        if (!(height > 0.0) || height < options.min_height || prominence < options.min_prominence) continue;

        const double half = 0.5 * height;
        double left = nan, right = nan;
        for (std::size_t k = i; k-- > 0;) {
            if (values[k] <= half) {
                left = crossing(omegas[k], values[k], omegas[k + 1], values[k + 1], half);
                break;
            }
        }
        for (std::size_t k = j + 1; k < n; ++k) {
            if (values[k] <= half) {
                right = crossing(omegas[k - 1], values[k - 1], omegas[k], values[k], half);
                break;
            }
        }
        table.peaks.push_back({position, height, right - left, prominence});
        i = j;
    }
    return table;
}

PeakTable find_peaks(const Spectrum& spectrum, const PeakOptions& options) {
    PeakTable table = find_peaks(spectrum.omegas, spectrum.A, options);
    table.engine = spectrum.engine;
    return table;
}

PolaritonModes polariton_modes(const EnsembleSpec& spec, int order) {
    validate(spec);
    if (order < 0 || order > spec.total_count() - 1) {
        throw RangeError("mode order " + std::to_string(order) + " outside [0, " +
                         std::to_string(spec.total_count() - 1) + "]");
    }
    const BlockOperators b = build_block_operators(spec, order);
    const Eigen::Index np = b.h_ph.size(), ne = b.h_e.size();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(np + ne, np + ne);
    for (Eigen::Index i = 0; i < np; ++i) h(i, i) = cplx(b.h_ph(i), -spec.cavity.kappa / 2);
    for (Eigen::Index i = 0; i < ne; ++i) h(np + i, np + i) = cplx(b.h_e(i), -spec.gamma / 2);
    h.topRightCorner(np, ne) = b.V;
    h.bottomLeftCorner(ne, np) = b.V.adjoint();

    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h, false);
    if (solver.info() != Eigen::Success) throw NumericError("mode eigenvalue solve did not converge");
    PolaritonModes modes;
    modes.order = order;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) modes.eigenvalues.push_back(solver.eigenvalues()(i));
    std::sort(modes.eigenvalues.begin(), modes.eigenvalues.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return modes;
}

SumRuleResult sum_rule(const GreenResult& green, double omega_ph) {
    SumRuleResult r;
    const auto& w = green.omegas;
    const auto& d = green.values;
    if (w.size() < 2) throw ConfigError("sum rule needs at least two grid points");
    double integral = 0.0;
    for (std::size_t i = 1; i < w.size(); ++i) integral += 0.5 * (w[i] - w[i - 1]) * (d[i].imag() + d[i - 1].imag());
    r.quadrature = -integral / M_PI;
    // Beyond the grid -Im D ~ C/(w - w_ph)^2, whose integral to infinity is
    // -Im D(end) * |end - w_ph|.
    r.tail = (-d.front().imag() * std::abs(w.front() - omega_ph) - d.back().imag() * std::abs(w.back() - omega_ph)) /
             M_PI;
    r.total = r.quadrature + r.tail;
    r.grid_too_narrow = std::abs(r.tail) > 0.1;
    return r;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
    out << "omega,re_D,im_D,A,T,R\n";
    char line[256];
    for (std::size_t i = 0; i < s.omegas.size(); ++i) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.omegas[i], s.green[i].real(),
                      s.green[i].imag(), s.A[i], s.T[i], s.R[i]);
        out << line;
    }
}

}  // namespace polariton
