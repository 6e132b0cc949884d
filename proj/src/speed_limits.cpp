#include "stokes_qsl/speed_limits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "stokes_qsl/dynamics.hpp"

namespace sqsl {

namespace {

struct GoldenResult {
    double arg = 0.0;
    double value = 0.0;
};

// Golden-section search for the maximum of f on [lo, hi]; assumes f is
// unimodal on the bracket, which holds for the narrow brackets handed over
// by the grid scan.
GoldenResult golden_max(const std::function<double(double)>& f, double lo, double hi,
                        double arg_tol) {
    constexpr double invphi = 0.6180339887498949;
    constexpr double invphi2 = 1.0 - invphi;
    double a = lo, b = hi;
    double h = b - a;
    double x1 = a + invphi2 * h;
    double x2 = a + invphi * h;
    double f1 = f(x1);
    double f2 = f(x2);
    while (h > arg_tol) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            h = b - a;
            x1 = a + invphi2 * h;
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            h = b - a;
            x2 = a + invphi * h;
            f2 = f(x2);
        }
    }
    return f1 > f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

struct SearchPoint {
    double p = 0.0;
    double phi = 0.0;
    double value = 0.0;
};

}  // namespace

double qsl_spectrum(const HamiltonianSpec& spec, int n_total) {
    if (spec.is_cross_kerr()) {
        if (n_total < 0) throw std::invalid_argument("qsl_spectrum: negative sector");
        const double eps = spec.epsilon();
        double lo = eps * 0.0;
        double hi = lo;
        for (int k = 1; k <= n_total; ++k) {
            const double e = eps * k * static_cast<double>(n_total - k);
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        return hi - lo;
    }
    const Eigen::MatrixXcd h = hamiltonian_matrix(spec, n_total);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("qsl_spectrum: eigendecomposition failed");
    }
    const auto& ev = es.eigenvalues();
    return ev[ev.size() - 1] - ev[0];
}

ClassicalQsl qsl_classical(const HamiltonianSpec& spec, int n_total,
                           const QslSearchConfig& config) {
    if (n_total == 0) {
        throw SectorUnderflow("qsl_classical: the vacuum sector has no restricted flow");
    }
    if (config.p_grid_points < 3 || config.phase_grid_points < 1) {
        throw std::invalid_argument("QslSearchConfig: grid too small");
    }
    if (!(config.objective_tol > 0.0)) {
        throw std::invalid_argument("QslSearchConfig: objective_tol must be positive");
    }
    if (!spec.is_cross_kerr() && spec.sector_dim() != n_total + 1) {
        throw DimensionMismatch("qsl_classical: matrix dimension does not match sector");
    }

    // The objective is invariant under a global mode phase, so alpha_+ can be
    // gauged real. Diagonal Hamiltonians depend on the moduli only, which
    // removes the relative phase as well.
    bool phase_free = spec.is_cross_kerr();
    if (!phase_free) {
        const Eigen::MatrixXcd& m = spec.matrix();
        double off = 0.0;
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                if (i != j) off = std::max(off, std::abs(m(i, j)));
            }
        }
        phase_free = off == 0.0;
    }

    const double root_n = std::sqrt(static_cast<double>(n_total));
    const auto objective = [&](double p, double phi) {
        p = std::clamp(p, 0.0, 1.0);
        const Complex ap = std::sqrt(p);
        const Complex am = std::polar(std::sqrt(1.0 - p), phi);
        const AmcsParams params(n_total, ap, am);
        const AmcsGradient g = grad_expectation(params, spec);
        const Complex wedge = am * g.wrt_alpha_plus_conj - ap * g.wrt_alpha_minus_conj;
        return 2.0 / root_n * std::abs(wedge);
    };

    const int np = config.p_grid_points;
    const int nphi = phase_free ? 1 : config.phase_grid_points;
    constexpr double two_pi = 2.0 * std::numbers::pi;

    SearchPoint best;
    best.value = objective(0.0, 0.0);
    for (int ip = 0; ip < np; ++ip) {
        const double p = static_cast<double>(ip) / (np - 1);
        for (int iphi = 0; iphi < nphi; ++iphi) {
            const double phi = two_pi * iphi / nphi;
            const double v = objective(p, phi);
            if (v > best.value) best = {p, phi, v};
        }
    }

    const double dp = 1.0 / (np - 1);
    const double dphi = two_pi / nphi;
    const auto refine = [&](double p0, double phi0) {
        SearchPoint pt{p0, phi0, objective(p0, phi0)};
        for (int round = 0; round < 8; ++round) {
            const double before = pt.value;
            const GoldenResult gp =
                golden_max([&](double p) { return objective(p, pt.phi); },
                           std::max(0.0, pt.p - dp), std::min(1.0, pt.p + dp), 1e-12);
            pt.p = gp.arg;
            pt.value = gp.value;
            if (!phase_free) {
                const GoldenResult gf =
                    golden_max([&](double phi) { return objective(pt.p, phi); },
                               pt.phi - dphi, pt.phi + dphi, 1e-10);
                pt.phi = gf.arg;
                pt.value = gf.value;
            }
            if (pt.value - before <= config.objective_tol && round > 0) break;
            if (phase_free) break;
        }
        return pt;
    };

    SearchPoint cand = refine(best.p, best.phi);
    // Hamiltonians symmetric under mode exchange produce mirror maxima at p
    // and 1 - p; report the smaller argmax when the values tie.
    const SearchPoint mirror = refine(1.0 - cand.p, cand.phi);
    const double tie = 1e-12 * std::max(1.0, std::abs(cand.value));
    if (mirror.value > cand.value + tie ||
        (std::abs(mirror.value - cand.value) <= tie && mirror.p < cand.p)) {
        cand = mirror;
    }

    const AmcsParams argmax(n_total, std::sqrt(cand.p),
                            std::polar(std::sqrt(1.0 - cand.p), cand.phi));
    return ClassicalQsl{cand.value, argmax};
}

double qsl_classical_kerr_closed(double epsilon, int n_total) {
    if (n_total < 0) throw std::invalid_argument("qsl_classical_kerr_closed: negative sector");
    if (n_total < 2) return 0.0;
    return std::abs(epsilon) * std::sqrt(static_cast<double>(n_total)) * (n_total - 1) / 2.0;
}

double speedup_ratio(int n_total) {
    if (n_total <= 1) {
        throw UndefinedRatio("speedup_ratio: restricted flow is frozen for N <= 1");
    }
    const double n = n_total;
    return (n * n - (n_total % 2)) / (2.0 * std::sqrt(n) * (n - 1.0));
}

double instantaneous_speed_classical(const AmcsParams& params, const HamiltonianSpec& spec) {
    if (params.n_total() == 0) {
        throw SectorUnderflow("instantaneous_speed_classical: vacuum sector");
    }
    return classical_speed(params, classical_rhs(params, spec));
}

SpeedLimitReport compute_speed_limit_report(const HamiltonianSpec& spec, int n_total,
                                            const QslSearchConfig& config) {
    ClassicalQsl cl = qsl_classical(spec, n_total, config);
    SpeedLimitReport report{n_total, qsl_spectrum(spec, n_total), cl.value,
                            std::move(cl.argmax), std::nullopt};
    if (report.qsl_cl > 0.0) report.ratio = report.qsl / report.qsl_cl;
    return report;
}

}  // namespace sqsl
