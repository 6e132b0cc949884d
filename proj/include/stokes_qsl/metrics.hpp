// metrics.hpp — distances between sector states: fidelity, Hilbert-Schmidt
// distance, trajectory comparisons and the (eps, t) distance map between the
// exact and the AMCS-restricted cross-Kerr evolution.

#pragma once

#include <vector>

#include "stokes_qsl/dynamics.hpp"
#include "stokes_qsl/fock_sector.hpp"

namespace sqsl {

struct DistanceSeries {
    std::vector<double> times;
    std::vector<double> d_hs;
    std::vector<double> fidelity;
};

// |<a|b>|^2. Throws DimensionMismatch when the sectors differ.
double fidelity(const FockStateN& a, const FockStateN& b);

// Hilbert-Schmidt distance of the pure-state projectors,
// sqrt(2) sqrt(1 - |<a|b>|^2).
double hs_distance(const FockStateN& a, const FockStateN& b);

// Pointwise distances between a classical (AMCS) and a quantum trajectory
// sampled on the same time grid. Throws DimensionMismatch when grids,
// sectors or regimes do not line up.
DistanceSeries distance_series(const Trajectory& classical, const Trajectory& quantum);

// d_hs between the exact and the restricted cross-Kerr evolution of the
// real-amplitude AMCS with |a+|^2 = p_plus, on the grid eps x t. Entry (i, j)
// belongs to (eps_grid[i], t_grid[j]). Both evolutions are diagonal, so the
// map reduces to one binomially weighted phase sum per grid point.
Eigen::MatrixXd distance_map(int n_total, double p_plus, const std::vector<double>& eps_grid,
                             const std::vector<double>& t_grid);

}  // namespace sqsl
