// speed_limits.hpp — evolution-speed bounds on the fixed-N sector: the
// spectral bound for unrestricted quantum dynamics, the supremum of the
// restricted AMCS flow speed (numerically and, for cross-Kerr, in closed
// form) and the ratio certifying the quantum speedup.

#pragma once

#include <optional>

#include "stokes_qsl/fock_sector.hpp"

namespace sqsl {

// Search configuration for the restricted-speed supremum. The objective is
// scanned over p = |a+|^2 (and the relative mode phase when the Hamiltonian
// is phase sensitive), then polished by golden-section refinement.
struct QslSearchConfig {
    int p_grid_points = 1001;
    int phase_grid_points = 256;
    // Coordinate refinement rounds stop once the objective improves by less
    // than this amount.
    double objective_tol = 1e-10;
};

struct ClassicalQsl {
    double value = 0.0;
    AmcsParams argmax;
};

struct SpeedLimitReport {
    int n_total = 0;
    double qsl = 0.0;       // spectral bound E_max - E_min
    double qsl_cl = 0.0;    // supremum of the restricted flow speed
    AmcsParams argmax;      // where the supremum is attained
    // qsl / qsl_cl; empty when the restricted flow is frozen (qsl_cl = 0).
    std::optional<double> ratio;
};

// Spectral width E_max - E_min of the Hamiltonian on sector n_total. The
// trace-norm rate of any unit-norm state never exceeds this.
double qsl_spectrum(const HamiltonianSpec& spec, int n_total);

// Supremum over AMCS parameters of the restricted flow speed,
//   (2/sqrt(N)) |a- g+ - a+ g-|,
// with g the gradient of <H>. A global mode phase drops out, so the search
// space is p in [0, 1] plus one relative phase. Deterministic: ties between
// mirror maxima (p versus 1-p) resolve to the smaller p. Throws
// SectorUnderflow for N = 0.
ClassicalQsl qsl_classical(const HamiltonianSpec& spec, int n_total,
                           const QslSearchConfig& config = {});

// Closed form of the cross-Kerr restricted-speed supremum,
// |eps| sqrt(N) (N - 1) / 2, attained at p = (1 -+ 1/sqrt(2))/2.
double qsl_classical_kerr_closed(double epsilon, int n_total);

// Cross-Kerr speedup ratio Q(N) = (N^2 - (N mod 2)) / (2 sqrt(N) (N - 1)).
// Independent of eps, which cancels. Throws UndefinedRatio for N <= 1, where
// the restricted flow is frozen.
double speedup_ratio(int n_total);

// Trace-norm rate of the restricted flow at one parameter point.
double instantaneous_speed_classical(const AmcsParams& params, const HamiltonianSpec& spec);

// Bundles both bounds and their ratio for one (H, N) pair.
SpeedLimitReport compute_speed_limit_report(const HamiltonianSpec& spec, int n_total,
                                            const QslSearchConfig& config = {});

}  // namespace sqsl
