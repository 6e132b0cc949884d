#include "stokes_qsl/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace sqsl {

double fidelity(const FockStateN& a, const FockStateN& b) {
    if (a.n_total() != b.n_total()) {
        throw DimensionMismatch("fidelity: states live on different sectors");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double hs_distance(const FockStateN& a, const FockStateN& b) {
    return std::sqrt(2.0 * std::max(0.0, 1.0 - fidelity(a, b)));
}

DistanceSeries distance_series(const Trajectory& classical, const Trajectory& quantum) {
    if (classical.regime != Regime::classical || quantum.regime != Regime::quantum) {
        throw DimensionMismatch("distance_series: expects one classical and one quantum trajectory");
    }
    if (classical.size() != quantum.size()) {
        throw DimensionMismatch("distance_series: trajectories have different lengths");
    }
    DistanceSeries series;
    series.times = classical.times;
    series.d_hs.reserve(classical.size());
    series.fidelity.reserve(classical.size());
    for (std::size_t i = 0; i < classical.size(); ++i) {
        const double dt = std::abs(classical.times[i] - quantum.times[i]);
        if (dt > 1e-12 * std::max(1.0, std::abs(classical.times[i]))) {
            throw DimensionMismatch("distance_series: time grids do not match");
        }
        const FockStateN restricted = build_amcs(classical.params[i]);
        const double f = fidelity(restricted, quantum.states[i]);
        series.fidelity.push_back(f);
        series.d_hs.push_back(std::sqrt(2.0 * std::max(0.0, 1.0 - f)));
    }
    return series;
}

Eigen::MatrixXd distance_map(int n_total, double p_plus, const std::vector<double>& eps_grid,
                             const std::vector<double>& t_grid) {
    if (!(p_plus >= 0.0 && p_plus <= 1.0)) {
        throw std::invalid_argument("distance_map: p_plus must lie in [0, 1]");
    }
    if (eps_grid.empty() || t_grid.empty()) {
        throw std::invalid_argument("distance_map: empty grid");
    }

    // Binomial weights |c_k|^2 of the initial AMCS.
    const FockStateN initial = build_amcs(AmcsParams::from_p(n_total, p_plus));
    Eigen::VectorXd weights(n_total + 1);
    for (int k = 0; k <= n_total; ++k) weights[k] = std::norm(initial.amplitudes()[k]);

    // Overlap of the two evolutions: the restricted state carries phases
    // exp(-i k omega_tilde t) relative to the k = 0 amplitude (a global phase
    // drops out of the fidelity), the exact state exp(-i eps k (N - k) t).
    const double omega_factor = (n_total - 1.0) * (1.0 - 2.0 * p_plus);  // omega_tilde / eps
    Eigen::MatrixXd map(eps_grid.size(), t_grid.size());
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        const double eps = eps_grid[i];
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            const double t = t_grid[j];
            Complex overlap = 0.0;
            for (int k = 0; k <= n_total; ++k) {
                const double phase = eps * t * (k * omega_factor - k * static_cast<double>(n_total - k));
                overlap += weights[k] * std::polar(1.0, phase);
            }
            const double f = std::norm(overlap);
            map(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::sqrt(2.0 * std::max(0.0, 1.0 - f));
        }
    }
    return map;
}

}  // namespace sqsl
