#include "stokes_qsl/fock_sector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sqsl {

namespace {

// Renormalization window for AMCS parameter input.
constexpr double kAmcsNormTol = 1e-3;

// Entrywise Hermiticity tolerance for general Hamiltonian matrices.
constexpr double kHermitianTol = 1e-12;

void check_n_total(int n_total) {
    if (n_total < 0 || n_total > kMaxPhotonNumber) {
        throw std::invalid_argument("n_total must lie in [0, " +
                                    std::to_string(kMaxPhotonNumber) + "], got " +
                                    std::to_string(n_total));
    }
}

}  // namespace

// ------------------------------- FockStateN --------------------------------

FockStateN::FockStateN(int n_total, Eigen::VectorXcd amplitudes) {
    check_n_total(n_total);
    if (amplitudes.size() != n_total + 1) {
        throw DimensionMismatch("FockStateN: sector " + std::to_string(n_total) +
                                " needs " + std::to_string(n_total + 1) +
                                " amplitudes, got " + std::to_string(amplitudes.size()));
    }
    const double nrm = amplitudes.norm();
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
        throw NormalizationError("FockStateN: amplitudes have zero or non-finite norm");
    }
    n_total_ = n_total;
    amplitudes_ = std::move(amplitudes);
    amplitudes_ /= nrm;
}

FockStateN FockStateN::raw(int n_total, Eigen::VectorXcd amplitudes) {
    check_n_total(n_total);
    if (amplitudes.size() != n_total + 1) {
        throw DimensionMismatch("FockStateN::raw: sector " + std::to_string(n_total) +
                                " needs " + std::to_string(n_total + 1) +
                                " amplitudes, got " + std::to_string(amplitudes.size()));
    }
    FockStateN s;
    s.n_total_ = n_total;
    s.amplitudes_ = std::move(amplitudes);
    return s;
}

FockStateN FockStateN::basis(int n_total, int n_plus) {
    check_n_total(n_total);
    if (n_plus < 0 || n_plus > n_total) {
        throw std::invalid_argument("FockStateN::basis: n_plus out of range");
    }
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n_total + 1);
    c[n_plus] = 1.0;
    return raw(n_total, std::move(c));
}

// ------------------------------- AmcsParams --------------------------------

AmcsParams::AmcsParams(int n_total, Complex alpha_plus, Complex alpha_minus) {
    check_n_total(n_total);
    const double n2 = std::norm(alpha_plus) + std::norm(alpha_minus);
    if (!std::isfinite(n2)) {
        throw NormalizationError("AmcsParams: non-finite mode amplitudes");
    }
    if (std::abs(n2 - 1.0) > kAmcsNormTol) {
        throw NormalizationError("AmcsParams: |a+|^2 + |a-|^2 = " + std::to_string(n2) +
                                 " deviates from 1 by more than 1e-3");
    }
    const double scale = std::sqrt(n2);
    n_total_ = n_total;
    alpha_plus_ = alpha_plus / scale;
    alpha_minus_ = alpha_minus / scale;
}

AmcsParams AmcsParams::from_p(int n_total, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("AmcsParams::from_p: p must lie in [0, 1]");
    }
    return AmcsParams(n_total, std::sqrt(p), std::sqrt(1.0 - p));
}

// ----------------------------- HamiltonianSpec -----------------------------

HamiltonianSpec HamiltonianSpec::cross_kerr(double epsilon) {
    if (!std::isfinite(epsilon)) {
        throw std::invalid_argument("HamiltonianSpec::cross_kerr: epsilon must be finite");
    }
    return HamiltonianSpec(std::variant<double, Eigen::MatrixXcd>(epsilon));
}

HamiltonianSpec HamiltonianSpec::general(Eigen::MatrixXcd h) {
    if (h.rows() != h.cols() || h.rows() == 0) {
        throw std::invalid_argument("HamiltonianSpec::general: matrix must be square and non-empty");
    }
    const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (!(dev <= kHermitianTol)) {
        throw std::invalid_argument("HamiltonianSpec::general: matrix is not Hermitian within 1e-12");
    }
    return HamiltonianSpec(std::variant<double, Eigen::MatrixXcd>(std::move(h)));
}

double HamiltonianSpec::epsilon() const {
    if (!is_cross_kerr()) throw std::logic_error("HamiltonianSpec: not a cross-Kerr spec");
    return std::get<double>(h_);
}

const Eigen::MatrixXcd& HamiltonianSpec::matrix() const {
    if (is_cross_kerr()) throw std::logic_error("HamiltonianSpec: cross-Kerr spec has no matrix");
    return std::get<Eigen::MatrixXcd>(h_);
}

int HamiltonianSpec::sector_dim() const {
    return is_cross_kerr() ? -1 : static_cast<int>(matrix().rows());
}

// ------------------------------- operations --------------------------------

FockStateN build_amcs(const AmcsParams& params) {
    const int n = params.n_total();
    const Complex ap = params.alpha_plus();
    const Complex am = params.alpha_minus();
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n + 1);

    if (n == 0) {
        c[0] = 1.0;
        return FockStateN::raw(0, std::move(c));
    }

    const double map = std::abs(ap);
    const double mam = std::abs(am);
    if (map == 0.0) {
        c[0] = std::pow(am, static_cast<double>(n));
        c[0] /= std::abs(c[0]);
        return FockStateN::raw(n, std::move(c));
    }
    if (mam == 0.0) {
        c[n] = std::pow(ap, static_cast<double>(n));
        c[n] /= std::abs(c[n]);
        return FockStateN::raw(n, std::move(c));
    }

    // Anchor the amplitude recurrence at the dominant binomial term and fill
    // outward with neighbor ratios. Running products from k = 0 would over-
    // or underflow for large N; anchored at the peak both tails only decay.
    const double p = std::norm(ap) / (std::norm(ap) + std::norm(am));
    const int k0 = std::clamp(static_cast<int>(std::llround(p * n)), 0, n);
    const double log_mag = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(k0 + 1.0) -
                                  std::lgamma(n - k0 + 1.0)) +
                           k0 * std::log(map) + (n - k0) * std::log(mam);
    const double phase = k0 * std::arg(ap) + (n - k0) * std::arg(am);
    c[k0] = std::polar(std::exp(log_mag), phase);

    const Complex up = ap / am;
    const Complex down = am / ap;
    for (int k = k0; k < n; ++k) {
        c[k + 1] = c[k] * (std::sqrt(static_cast<double>(n - k) / (k + 1.0)) * up);
    }
    for (int k = k0; k > 0; --k) {
        c[k - 1] = c[k] * (std::sqrt(static_cast<double>(k) / (n - k + 1.0)) * down);
    }

    c /= c.norm();
    return FockStateN::raw(n, std::move(c));
}

FockStateN apply_annihilation(const FockStateN& state, Mode mode) {
    const int n = state.n_total();
    if (n == 0) {
        throw SectorUnderflow("apply_annihilation: cannot lower the vacuum sector");
    }
    const Eigen::VectorXcd& c = state.amplitudes();
    Eigen::VectorXcd out(n);
    if (mode == Mode::plus) {
        for (int j = 0; j < n; ++j) out[j] = std::sqrt(j + 1.0) * c[j + 1];
    } else {
        for (int j = 0; j < n; ++j) out[j] = std::sqrt(static_cast<double>(n - j)) * c[j];
    }
    return FockStateN::raw(n - 1, std::move(out));
}

Eigen::MatrixXcd hamiltonian_matrix(const HamiltonianSpec& spec, int n_total) {
    check_n_total(n_total);
    if (spec.is_cross_kerr()) {
        const double eps = spec.epsilon();
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_total + 1, n_total + 1);
        for (int k = 0; k <= n_total; ++k) {
            m(k, k) = eps * k * static_cast<double>(n_total - k);
        }
        return m;
    }
    if (spec.sector_dim() != n_total + 1) {
        throw DimensionMismatch("hamiltonian_matrix: matrix of dimension " +
                                std::to_string(spec.sector_dim()) +
                                " does not act on sector " + std::to_string(n_total));
    }
    return spec.matrix();
}

Eigen::VectorXcd apply_hamiltonian(const HamiltonianSpec& spec, int n_total,
                                   const Eigen::VectorXcd& v) {
    check_n_total(n_total);
    if (v.size() != n_total + 1) {
        throw DimensionMismatch("apply_hamiltonian: vector length " +
                                std::to_string(v.size()) + " does not match sector " +
                                std::to_string(n_total));
    }
    if (spec.is_cross_kerr()) {
        const double eps = spec.epsilon();
        Eigen::VectorXcd out(v.size());
        for (int k = 0; k <= n_total; ++k) {
            out[k] = eps * k * static_cast<double>(n_total - k) * v[k];
        }
        return out;
    }
    if (spec.sector_dim() != n_total + 1) {
        throw DimensionMismatch("apply_hamiltonian: matrix dimension does not match sector");
    }
    return spec.matrix() * v;
}

double expectation(const FockStateN& state, const HamiltonianSpec& spec) {
    const Eigen::VectorXcd w = apply_hamiltonian(spec, state.n_total(), state.amplitudes());
    return state.amplitudes().dot(w).real();
}

EnergyMoments energy_moments(const FockStateN& state, const HamiltonianSpec& spec) {
    const Eigen::VectorXcd w = apply_hamiltonian(spec, state.n_total(), state.amplitudes());
    EnergyMoments m;
    m.mean = state.amplitudes().dot(w).real();
    // <H^2> = |H psi|^2 for a unit-norm state.
    m.variance = std::max(0.0, w.squaredNorm() - m.mean * m.mean);
    return m;
}

AmcsGradient grad_expectation(const AmcsParams& params, const HamiltonianSpec& spec) {
    const int n = params.n_total();
    if (n == 0) {
        throw SectorUnderflow("grad_expectation: no gradient on the vacuum sector");
    }
    const FockStateN s_n = build_amcs(params);
    const FockStateN s_lower =
        build_amcs(AmcsParams(n - 1, params.alpha_plus(), params.alpha_minus()));
    const Eigen::VectorXcd w = apply_hamiltonian(spec, n, s_n.amplitudes());

    // a_+- H |s_N> lives on sector N - 1.
    Eigen::VectorXcd wp(n), wm(n);
    for (int j = 0; j < n; ++j) {
        wp[j] = std::sqrt(j + 1.0) * w[j + 1];
        wm[j] = std::sqrt(static_cast<double>(n - j)) * w[j];
    }
    const double root_n = std::sqrt(static_cast<double>(n));
    AmcsGradient g;
    g.wrt_alpha_plus_conj = root_n * s_lower.amplitudes().dot(wp);
    g.wrt_alpha_minus_conj = root_n * s_lower.amplitudes().dot(wm);
    return g;
}

StokesVector stokes_of_state(const FockStateN& state) {
    const int n = state.n_total();
    if (n == 0) {
        throw SectorUnderflow("stokes_of_state: vacuum sector carries no polarization");
    }
    const Eigen::VectorXcd& c = state.amplitudes();
    double jz = 0.0;
    Complex jp = 0.0;
    for (int k = 0; k <= n; ++k) {
        jz += std::norm(c[k]) * (k - 0.5 * n);
    }
    for (int k = 0; k < n; ++k) {
        jp += std::conj(c[k + 1]) * std::sqrt((n - k) * (k + 1.0)) * c[k];
    }
    const double scale = 2.0 / n;
    return {scale * jp.real(), scale * jp.imag(), scale * jz};
}

StokesVector stokes_of_amcs(const AmcsParams& params) {
    const Complex cross = 2.0 * std::conj(params.alpha_plus()) * params.alpha_minus();
    return {cross.real(), cross.imag(),
            std::norm(params.alpha_plus()) - std::norm(params.alpha_minus())};
}

}  // namespace sqsl
