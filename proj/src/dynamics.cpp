#include "stokes_qsl/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "stokes_qsl/ode.hpp"

namespace sqsl {

namespace {

void check_config(const EvolutionConfig& config) {
    if (!(config.t_max >= 0.0) || !std::isfinite(config.t_max)) {
        throw std::invalid_argument("EvolutionConfig: t_max must be finite and non-negative");
    }
    if (config.n_samples < 2) {
        throw std::invalid_argument("EvolutionConfig: n_samples must be at least 2");
    }
    if (!(config.abs_tol > 0.0 && config.abs_tol <= 1e-2) ||
        !(config.rel_tol > 0.0 && config.rel_tol <= 1e-2)) {
        throw std::invalid_argument("EvolutionConfig: tolerances must lie in (0, 1e-2]");
    }
}

Eigen::VectorXd pack(const Complex& ap, const Complex& am) {
    Eigen::VectorXd y(4);
    y << ap.real(), ap.imag(), am.real(), am.imag();
    return y;
}

// A constant classical trajectory; covers the vacuum sector (no dynamics) and
// zero time spans.
Trajectory constant_classical(const AmcsParams& params, const std::vector<double>& times) {
    Trajectory traj;
    traj.regime = Regime::classical;
    traj.times = times;
    const StokesVector r =
        params.n_total() == 0 ? StokesVector{} : stokes_of_amcs(params);
    for (std::size_t i = 0; i < times.size(); ++i) {
        traj.params.push_back(params);
        traj.stokes.push_back(r);
        traj.speed.push_back(0.0);
    }
    return traj;
}

}  // namespace

std::vector<double> uniform_times(double t_max, int n_samples) {
    if (t_max == 0.0) return {0.0};
    std::vector<double> times(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        times[i] = t_max * static_cast<double>(i) / (n_samples - 1);
    }
    times.back() = t_max;
    return times;
}

AmcsVelocity classical_rhs(const AmcsParams& params, const HamiltonianSpec& spec) {
    const int n = params.n_total();
    if (n == 0) {
        throw SectorUnderflow("classical_rhs: the vacuum sector has no mode dynamics");
    }
    const AmcsGradient g = grad_expectation(params, spec);
    const Complex ap = params.alpha_plus();
    const Complex am = params.alpha_minus();
    const double nm1 = n - 1.0;
    const Complex l11 = 1.0 + nm1 * std::norm(am);
    const Complex l12 = -nm1 * std::conj(am) * ap;
    const Complex l21 = -nm1 * std::conj(ap) * am;
    const Complex l22 = 1.0 + nm1 * std::norm(ap);
    const Complex scale = Complex(0.0, -1.0) / (static_cast<double>(n) * n);
    AmcsVelocity v;
    v.alpha_plus_dot = scale * (l11 * g.wrt_alpha_plus_conj + l12 * g.wrt_alpha_minus_conj);
    v.alpha_minus_dot = scale * (l21 * g.wrt_alpha_plus_conj + l22 * g.wrt_alpha_minus_conj);
    return v;
}

double classical_speed(const AmcsParams& params, const AmcsVelocity& v) {
    const Complex wedge = v.alpha_plus_dot * params.alpha_minus() -
                          v.alpha_minus_dot * params.alpha_plus();
    return 2.0 * std::sqrt(static_cast<double>(params.n_total())) * std::abs(wedge);
}

KerrFrequencies kerr_frequencies(const AmcsParams& params, double epsilon) {
    const int n = params.n_total();
    if (n == 0) {
        throw SectorUnderflow("kerr_frequencies: undefined on the vacuum sector");
    }
    const double pp = std::norm(params.alpha_plus());
    const double pm = std::norm(params.alpha_minus());
    // Contracting the flow kernel with the cross-Kerr gradient collapses the
    // right-hand side to a pure rotation of each mode: the bracket
    // (1 + (N-1)|a_mp|^2)(1 + (N-2)|a_pm|^2) - (N-1)|a_pm|^2 (1 + (N-2)|a_mp|^2)
    // reduces to N |a_mp|^2 on the unit manifold, leaving
    // omega_pm = eps (N-1) |a_mp|^4.
    const double a = epsilon * (n - 1.0);
    KerrFrequencies w;
    w.omega_plus = a * pm * pm;
    w.omega_minus = a * pp * pp;
    w.omega_tilde = w.omega_plus - w.omega_minus;
    return w;
}

Trajectory evolve_classical_ode(const AmcsParams& params, const HamiltonianSpec& spec,
                                const EvolutionConfig& config) {
    check_config(config);
    const int n = params.n_total();
    const std::vector<double> times = uniform_times(config.t_max, config.n_samples);
    if (n == 0 || config.t_max == 0.0) {
        return constant_classical(params, times);
    }

    Trajectory traj;
    traj.regime = Regime::classical;
    traj.times = times;
    traj.params.reserve(times.size());
    traj.stokes.reserve(times.size());
    traj.speed.reserve(times.size());

    const auto rhs = [&](double, const Eigen::VectorXd& y) {
        const AmcsParams at(n, Complex(y[0], y[1]), Complex(y[2], y[3]));
        const AmcsVelocity v = classical_rhs(at, spec);
        return pack(v.alpha_plus_dot, v.alpha_minus_dot);
    };
    ode::PostStep post;
    if (config.renormalize_each_step) {
        post = [](Eigen::VectorXd& y) { y /= y.norm(); };
    }
    const auto sink = [&](std::size_t, double, const Eigen::VectorXd& y) {
        const AmcsParams at(n, Complex(y[0], y[1]), Complex(y[2], y[3]));
        traj.params.push_back(at);
        traj.stokes.push_back(stokes_of_amcs(at));
        traj.speed.push_back(classical_speed(at, classical_rhs(at, spec)));
    };

    ode::Options opts;
    opts.abs_tol = config.abs_tol;
    opts.rel_tol = config.rel_tol;
    ode::integrate_dopri5(rhs, pack(params.alpha_plus(), params.alpha_minus()), times, opts,
                          post, sink);
    return traj;
}

Trajectory evolve_classical_kerr_analytic(const AmcsParams& params, double epsilon,
                                          const std::vector<double>& times) {
    const int n = params.n_total();
    if (n == 0) {
        throw SectorUnderflow("evolve_classical_kerr_analytic: undefined on the vacuum sector");
    }
    if (times.empty()) {
        throw std::invalid_argument("evolve_classical_kerr_analytic: empty time grid");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument(
                "evolve_classical_kerr_analytic: times must be strictly increasing");
        }
    }

    const KerrFrequencies w = kerr_frequencies(params, epsilon);
    Trajectory traj;
    traj.regime = Regime::classical;
    traj.times = times;
    traj.params.reserve(times.size());
    traj.stokes.reserve(times.size());
    traj.speed.reserve(times.size());
    for (const double t : times) {
        const Complex ap = params.alpha_plus() * std::polar(1.0, -w.omega_plus * t);
        const Complex am = params.alpha_minus() * std::polar(1.0, -w.omega_minus * t);
        const AmcsParams at(n, ap, am);
        AmcsVelocity v;
        v.alpha_plus_dot = Complex(0.0, -w.omega_plus) * ap;
        v.alpha_minus_dot = Complex(0.0, -w.omega_minus) * am;
        traj.params.push_back(at);
        traj.stokes.push_back(stokes_of_amcs(at));
        traj.speed.push_back(classical_speed(at, v));
    }
    return traj;
}

Trajectory evolve_quantum(const FockStateN& state, const HamiltonianSpec& spec,
                          const EvolutionConfig& config) {
    check_config(config);
    const int n = state.n_total();
    const std::vector<double> times = uniform_times(config.t_max, config.n_samples);

    // Sector energies and the initial state in the eigenbasis. For cross-Kerr
    // the sector basis is already the eigenbasis.
    Eigen::VectorXd energies(n + 1);
    Eigen::MatrixXcd vectors;
    Eigen::VectorXcd z0;
    if (spec.is_cross_kerr()) {
        for (int k = 0; k <= n; ++k) {
            energies[k] = spec.epsilon() * k * static_cast<double>(n - k);
        }
        z0 = state.amplitudes();
    } else {
        const Eigen::MatrixXcd h = hamiltonian_matrix(spec, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
        if (es.info() != Eigen::Success) {
            throw std::runtime_error("evolve_quantum: eigendecomposition failed");
        }
        energies = es.eigenvalues();
        vectors = es.eigenvectors();
        z0 = vectors.adjoint() * state.amplitudes();
    }

    Trajectory traj;
    traj.regime = Regime::quantum;
    traj.times = times;
    traj.states.reserve(times.size());
    traj.stokes.reserve(times.size());
    traj.speed.reserve(times.size());
    Eigen::VectorXcd z(n + 1), c(n + 1);
    for (const double t : times) {
        for (int k = 0; k <= n; ++k) {
            z[k] = z0[k] * std::polar(1.0, -energies[k] * t);
        }
        if (spec.is_cross_kerr()) {
            c = z;
        } else {
            c = vectors * z;
        }
        // Propagation is exactly unitary, so the samples are stored without
        // renormalization; norm drift along the trajectory stays at roundoff.
        FockStateN sample = FockStateN::raw(n, c);
        traj.stokes.push_back(n == 0 ? StokesVector{} : stokes_of_state(sample));
        traj.speed.push_back(2.0 * std::sqrt(energy_moments(sample, spec).variance));
        traj.states.push_back(std::move(sample));
    }
    return traj;
}

StokesVector stokes_rhs(const StokesVector& r, const Eigen::Vector3d& h, int n_total) {
    if (n_total < 1) {
        throw std::invalid_argument("stokes_rhs: n_total must be at least 1");
    }
    const Eigen::Vector3d rv = r.to_vector();
    const Eigen::Vector3d out = (-2.0 / n_total) * rv.cross(h);
    return {out[0], out[1], out[2]};
}

}  // namespace sqsl
