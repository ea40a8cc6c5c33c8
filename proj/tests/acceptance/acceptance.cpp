#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/support.hpp"
#include "polariton/chi/susceptibility.hpp"
#include "polariton/diagrams/walks.hpp"
#include "polariton/engines/green.hpp"
#include "polariton/model/dense.hpp"
#include "polariton/run/presets.hpp"
#include "polariton/run/run_config.hpp"
#include "polariton/spectra/spectrum.hpp"

using namespace polariton;
using namespace testing_support;

namespace {

int failures = 0;
std::map<int, std::string> lines;  // printed in criterion order at the end

void report(int id, const std::string& title, bool pass, const std::string& detail) {
    char head[32];
    std::snprintf(head, sizeof head, "[%s] %2d ", pass ? "PASS" : "FAIL", id);
    lines[id] = head + title + ": " + detail;
    if (!pass) ++failures;
}

std::string fmt(const char* format, double a) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, format, a);
    return buffer;
}

std::vector<double> difference(const Spectrum& a, const Spectrum& b) {
    std::vector<double> d(a.A.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.A[i] - b.A[i];
    return d;
}

// Peak of `table` closest to `target`; NaN position when the table is empty.
Peak nearest(const PeakTable& table, double target) {
    Peak best{std::nan(""), 0.0, 0.0, 0.0};
    for (const auto& p : table.peaks) {
        if (std::isnan(best.position) || std::abs(p.position - target) < std::abs(best.position - target)) best = p;
    }
    return best;
}

std::vector<Spectrum> produced;  // every spectrum computed here, for criterion 2

Spectrum spectrum_of(const GreenResult& g, const EnsembleSpec& spec) {
    produced.push_back(compute_spectrum(g, spec.cavity.kappa));
    return produced.back();
}

const std::vector<int> kSweep{10, 50, 250};

void criterion1() {
    std::mt19937_64 rng(20240611);
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    int done = 0;
    while (done < 50) {
        const auto spec = random_spec(rng);
        if (spec.collective_coupling() > 1.0) continue;
        const double g = spec.collective_coupling();
        const auto w = linspace(spec.lowest_excitation() - 3 * g - 0.5, spec.lowest_excitation() + 3 * g + 1.5, 64);
        worst = std::max(worst, max_rel_diff(cf_full(spec, w).values, dense_green(spec, w).values));
        ++done;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(1, "oracle equivalence", worst <= 1e-9 && seconds < 30.0,
           "50 specs, max rel diff " + fmt("%.3g", worst) + " (<= 1e-9), " + fmt("%.2f", seconds) + " s (< 30 s)");
}

void criterion3and4() {
    bool positions_ok = true, delta_ok = true;
    std::ostringstream detail;
    std::vector<double> lower_heights, upper_heights;
    for (int n : kSweep) {
        const auto spec = fig2a_ensemble(n);
        const auto w = default_grid(spec).values();
        const auto zeroth = spectrum_of(d0(spec, w), spec);
        const auto full = spectrum_of(cf_full(spec, w), spec);
        const double c0 = kFig2aOverlap0, lambda = spec.lambda;
        const double shift = lambda * (std::sqrt(double(n)) - std::sqrt(n - 1.0)) * c0;

        const auto zp = find_peaks(zeroth);
        const Peak lo = nearest(zp, 10.0 - 0.8 * c0), hi = nearest(zp, 10.0 + 0.8 * c0);
        const double err_lo = std::abs(lo.position - (10.0 - 0.8 * c0));
        const double err_hi = std::abs(hi.position - (10.0 + 0.8 * c0));

        const auto dp = find_peaks(w, difference(full, zeroth), PeakOptions{0.0, 0.0});
        const double want_lo = lo.position + 1.0 + shift, want_hi = hi.position + 1.0 + shift;
        const Peak side_lo = nearest(dp, lo.position + 1.0), side_hi = nearest(dp, hi.position + 1.0);
        const double serr_lo = std::abs(side_lo.position - want_lo), serr_hi = std::abs(side_hi.position - want_hi);
        lower_heights.push_back(side_lo.height);
        upper_heights.push_back(side_hi.height);
        positions_ok = positions_ok && err_lo <= 0.02 && err_hi <= 0.02 && serr_lo <= 0.02 && serr_hi <= 0.02;

        // Splitting discrepancy between zeroth- and first-order polaritons,
        // measured on the complex mode frequencies of the two Rayleigh boxes.
        const auto m0 = polariton_modes(spec, 0), m1 = polariton_modes(spec, 1);
        const double split0 = m0.eigenvalues.back().real() - m0.eigenvalues.front().real();
        const double split1 = m1.eigenvalues.back().real() - m1.eigenvalues.front().real();
        const double ratio = (split0 - split1) / (2.0 * shift);
        delta_ok = delta_ok && std::abs(ratio - 1.0) <= 0.05;

        detail << "N=" << n << ": zeroth err " << fmt("%.2g", err_lo) << "/" << fmt("%.2g", err_hi)
               << ", sideband err " << fmt("%.2g", serr_lo) << "/" << fmt("%.2g", serr_hi) << " (measured shift "
               << fmt("%+.4f", side_lo.position - lo.position - 1.0) << "/"
               << fmt("%+.4f", side_hi.position - hi.position - 1.0) << " vs +" << fmt("%.4f", shift)
               << "), Delta ratio " << fmt("%.3f", ratio) << "; ";
    }
    report(3, "fig2a peak positions", positions_ok && delta_ok, detail.str() + "tolerance 0.02, Delta 5%");

    bool heights_ok = true;
    std::ostringstream h;
    for (std::size_t i = 0; i + 1 < kSweep.size(); ++i) {
        const double expect = double(kSweep[i + 1]) / kSweep[i];
        const double rl = lower_heights[i] / lower_heights[i + 1], ru = upper_heights[i] / upper_heights[i + 1];
        heights_ok = heights_ok && std::abs(rl / expect - 1.0) <= 0.10 && std::abs(ru / expect - 1.0) <= 0.10;
        h << "N " << kSweep[i] << "->" << kSweep[i + 1] << ": ratio " << fmt("%.3f", rl) << "/" << fmt("%.3f", ru)
          << " (expect " << fmt("%.0f", expect) << "); ";
    }
    report(4, "sideband height 1/N", heights_ok, h.str() + "tolerance 10%");
}

void criterion5() {
    const auto config = run_preset("fig2b");
    const auto spec = *config.ensemble;
    const auto w = config.grid->values();
    const auto t1 = spectrum_of(cf_truncated(spec, w, 1), spec);
    const auto t2 = spectrum_of(cf_truncated(spec, w, 2), spec);
    const auto diff = find_peaks(w, difference(t2, t1), PeakOptions{0.0, 0.0});
    const auto modes = polariton_modes(spec, 0).eigenvalues;
    bool ok = true;
    std::ostringstream detail;
    for (const double base : {modes.front().real(), modes.back().real()}) {
        detail << "polariton " << fmt("%.4f", base) << ":";
        for (double offset : {2.0, 2.2, 2.4}) {
            const Peak p = nearest(diff, base + offset);
            const double err = std::abs(p.position - base - offset);
            ok = ok && err <= 0.03;
            detail << " +" << fmt("%.1f", offset) << " err " << fmt("%.3g", err);
        }
        detail << "; ";
    }
    report(5, "fig2b second-order sidebands", ok, detail.str() + "tolerance 0.03");
}

void criterion6() {
    const auto m1 = enumerate_walks(1, 10).size(), m2 = enumerate_walks(2, 10).size();
    const auto m3 = enumerate_walks(3, 10);
    int interior = 0, mixed = 0;
    for (const auto& w : m3) {
        interior += classify_walk(w) == WalkClass::Reducible;
        mixed += ladder_family(w) == LadderFamily::ReducibleMixed;
    }
    const bool ok = m1 == 1 && m2 == 2 && m3.size() == 5 && mixed == 2;
    report(6, "walk-count table", ok,
           "counts " + std::to_string(m1) + "," + std::to_string(m2) + "," + std::to_string(m3.size()) +
               " (expect 1,2,5); m=3 reducible: " + std::to_string(mixed) +
               " mixed Rayleigh-Raman (expect 2), " + std::to_string(interior) +
               " by interior-visit rule incl. the pure Rayleigh cube");
}

EnsembleSpec weak_spec() {
    auto spec = fig2a_ensemble(10);
    spec.lambda = 0.05 / std::sqrt(10.0);
    return spec;
}

void criterion7() {
    const auto spec = weak_spec();
    const std::vector<double> w{9.5, 10.5};
    const auto ref = cf_full(spec, w);
    bool monotone = true;
    double previous = std::numeric_limits<double>::infinity(), last = 0.0;
    std::ostringstream detail;
    for (int m = 1; m <= 6; ++m) {
        last = max_rel_diff(dyson_partial_sum(spec, w, m).values, ref.values);
        monotone = monotone && last < previous;
        previous = last;
        detail << fmt("%.2e", last) << (m < 6 ? " " : "");
    }
    report(7, "Dyson convergence", monotone && last <= 1e-6,
           "rel err m=1..6: " + detail.str() + "; monotone, final <= 1e-6");
}

void criterion8() {
    const auto spec = fig2a_ensemble(10);
    const auto w = default_grid(spec).values();
    const auto reference = d0(spec, w);
    double worst = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const cplx chi1 = chi_term(spec, w[i], 0, ChiNormalization::Bare).value;
        const cplx rebuilt = 1.0 / (cplx(w[i] - spec.cavity.omega_ph, spec.cavity.kappa / 2) +
                                    spec.cavity.omega_ph / 2 * chi1);
        worst = std::max(worst, std::abs(rebuilt - reference.values[i]) / std::abs(reference.values[i]));
    }
    const auto weak = weak_spec();
    bool decreasing = true;
    std::ostringstream detail;
    for (double omega : {9.5, 10.5}) {
        double previous = std::numeric_limits<double>::infinity();
        for (int l = 0; l <= 2; ++l) {
            const double r = self_energy_from_series(weak, omega, l).residual();
            decreasing = decreasing && r < previous;
            previous = r;
            detail << fmt("%.2e", r) << (l < 2 ? " " : "; ");
        }
    }
    report(8, "susceptibility reconstruction", worst <= 1e-12 && decreasing,
           "d0 from chi1 rel err " + fmt("%.2e", worst) + " (<= 1e-12); residuals l=0..2 " + detail.str());
}

void criterion9() {
    std::ostringstream detail;
    bool ok = true;
    for (int n : {10, 40}) {
        auto residual = [](int count) {
            const auto spec = fig2a_ensemble(count);
            const auto w = default_grid(fig2a_ensemble(10)).values();
            const auto r = subtract(cf_truncated(spec, w, 1), expansion_sum(spec, w, 1), EngineTag{});
            return std::make_pair(max_abs(r.values), max_abs(d2_x2(spec, w).values));
        };
        const auto a = residual(n), b = residual(4 * n);
        const double r1 = a.first / b.first, r2 = a.second / b.second;
        ok = ok && std::abs(r1 / 4.0 - 1.0) <= 0.15 && std::abs(r2 / 16.0 - 1.0) <= 0.20;
        detail << "N " << n << "->" << 4 * n << ": trunc1-(d0+d1) shrinks " << fmt("%.2f", r1) << "x (expect 4 +-15%), "
               << "d2_x2 shrinks " << fmt("%.2f", r2) << "x (expect 16 +-20%); ";
    }
    report(9, "expansion consistency", ok, detail.str());
}

void criterion10() {
    bool ok = true;
    std::ostringstream detail;
    for (int n : kSweep) {
        const auto spec = fig2a_ensemble(n);
        const auto w = default_grid(spec).values();
        const auto r = sum_rule(cf_full(spec, w), spec.cavity.omega_ph);
        ok = ok && std::abs(r.total - 1.0) <= 0.02;
        detail << "N=" << n << ": " << fmt("%.4f", r.total) << " (tail " << fmt("%.4f", r.tail) << "); ";
    }
    report(10, "sum rule", ok, detail.str() + "tolerance 0.02");
}

void criterion2() {
    double worst = 0.0;
    for (const auto& s : produced) {
        for (std::size_t i = 0; i < s.A.size(); ++i) worst = std::max(worst, std::abs(s.A[i] + s.T[i] + s.R[i] - 1.0));
    }
    std::mt19937_64 rng(7);
    double gauge = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        auto spec = random_spec(rng);
        const auto w = linspace(spec.lowest_excitation() - 2, spec.lowest_excitation() + 3, 64);
        const auto plus = cf_full(spec, w), plus_dense = dense_green(spec, w);
        spec.lambda = -spec.lambda;
        gauge = std::max({gauge, max_rel_diff(plus.values, cf_full(spec, w).values),
                          max_rel_diff(plus_dense.values, dense_green(spec, w).values)});
    }
    report(2, "identity suite", worst <= 1e-12 && gauge <= 1e-12,
           "A+T+R-1 max " + fmt("%.2e", worst) + " over " + std::to_string(produced.size()) +
               " spectra; gauge lambda->-lambda " + fmt("%.2e", gauge) + " (both <= 1e-12)");
}

}  // namespace

int main() {
    criterion1();
    criterion3and4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion2();  // last: checks every spectrum produced above
    for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
    std::printf("%d of %zu criteria failed\n", failures, lines.size());
    return failures == 0 ? 0 : 1;
}
