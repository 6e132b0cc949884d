// dynamics.hpp — time evolution in the fixed-N sector: exact quantum
// propagation, the variationally restricted AMCS flow (numerically and, for
// cross-Kerr, in closed form) and the induced motion on the Stokes sphere.

#pragma once

#include <vector>

#include "stokes_qsl/fock_sector.hpp"

namespace sqsl {

struct EvolutionConfig {
    double t_max = 10.0;
    int n_samples = 200;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    // Project the integrated mode amplitudes back to unit norm after every
    // accepted step. The flow conserves the norm analytically, so this only
    // removes accumulated roundoff.
    bool renormalize_each_step = true;
};

enum class Regime { classical, quantum };

// Sampled evolution. Quantum trajectories fill `states`, classical ones fill
// `params`; both fill `times`, `stokes` and `speed` (the instantaneous
// trace-norm rate of the evolved state).
struct Trajectory {
    Regime regime = Regime::classical;
    std::vector<double> times;
    std::vector<FockStateN> states;
    std::vector<AmcsParams> params;
    std::vector<StokesVector> stokes;
    std::vector<double> speed;

    std::size_t size() const { return times.size(); }
};

// Time derivative of the AMCS mode amplitudes.
struct AmcsVelocity {
    Complex alpha_plus_dot;
    Complex alpha_minus_dot;
};

// Mode rotation frequencies of the cross-Kerr AMCS flow. The amplitudes
// evolve as a_+-(t) = a_+-(0) exp(-i omega_+- t); omega_tilde is the relative
// rate omega_+ - omega_-.
struct KerrFrequencies {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double omega_tilde = 0.0;
};

// Right-hand side of the restricted flow,
//   (da+/dt, da-/dt) = -(i/N^2) Lambda(a) grad <H>,
// with the 2x2 kernel Lambda = [[1 + (N-1)|a-|^2, -(N-1) conj(a-) a+],
//                              [-(N-1) conj(a+) a-, 1 + (N-1)|a+|^2]].
// Throws SectorUnderflow for N = 0.
AmcsVelocity classical_rhs(const AmcsParams& params, const HamiltonianSpec& spec);

// Instantaneous trace-norm rate of the AMCS state moving with the given
// velocity: 2 sqrt(N) |ad+ a- - ad- a+|.
double classical_speed(const AmcsParams& params, const AmcsVelocity& v);

// Closed-form frequencies of the cross-Kerr restricted flow. Requires N >= 1.
KerrFrequencies kerr_frequencies(const AmcsParams& params, double epsilon);

// Integrates the restricted flow with the adaptive stepper, sampling
// n_samples points uniformly on [0, t_max]. N = 0 yields the constant
// trajectory. Throws IntegrationFailure if the tolerances cannot be met.
Trajectory evolve_classical_ode(const AmcsParams& params, const HamiltonianSpec& spec,
                                const EvolutionConfig& config);

// Exact cross-Kerr AMCS evolution a_+-(t) = a_+-(0) exp(-i omega_+- t),
// sampled at the given strictly increasing times. Throws SectorUnderflow for
// N = 0.
Trajectory evolve_classical_kerr_analytic(const AmcsParams& params, double epsilon,
                                          const std::vector<double>& times);

// Exact unitary propagation of a sector state: diagonal phases for cross-Kerr
// specs, one eigendecomposition otherwise. Samples uniformly on [0, t_max].
Trajectory evolve_quantum(const FockStateN& state, const HamiltonianSpec& spec,
                          const EvolutionConfig& config);

// Stokes-sphere form of the restricted flow, dr/dt = -(2/N) r x h, for an
// effective field h (the gradient of <H> with respect to r).
StokesVector stokes_rhs(const StokesVector& r, const Eigen::Vector3d& h, int n_total);

// n_samples points spaced uniformly over [0, t_max]; the single point {0}
// when t_max = 0.
std::vector<double> uniform_times(double t_max, int n_samples);

}  // namespace sqsl
