// fock_sector.hpp — fixed-N two-mode Fock sector: states, angular-momentum
// coherent states (AMCS), mode operators, Hamiltonians and Stokes vectors.
//
// A pure state with exactly N photons split over two polarization modes is a
// complex vector of length N + 1; entry k is the amplitude of the basis ket
// with k photons in the "+" mode and N - k in the "-" mode.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <variant>

#include "stokes_qsl/errors.hpp"

namespace sqsl {

using Complex = std::complex<double>;

// Largest supported total photon number. The AMCS amplitude recurrence stays
// finite and accurate up to this size; beyond it nothing is tested.
inline constexpr int kMaxPhotonNumber = 10000;

// --------------------------------- types -----------------------------------

// Normalized pure state on the fixed-N sector.
class FockStateN {
public:
    // Validates the length, then scales the amplitudes to unit norm.
    // Throws NormalizationError if they are zero or non-finite.
    FockStateN(int n_total, Eigen::VectorXcd amplitudes);

    // Wraps amplitudes without rescaling. For operator outputs that are
    // intentionally unnormalized (e.g. annihilation results) and for vectors
    // that are already unit norm by construction.
    static FockStateN raw(int n_total, Eigen::VectorXcd amplitudes);

    // Basis ket |n_+ = n_plus, n_- = n_total - n_plus>.
    static FockStateN basis(int n_total, int n_plus);

    int n_total() const noexcept { return n_total_; }
    int dim() const noexcept { return static_cast<int>(amplitudes_.size()); }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
    double norm() const { return amplitudes_.norm(); }

private:
    FockStateN() = default;

    int n_total_ = 0;
    Eigen::VectorXcd amplitudes_;
};

// AMCS parameter triple (N, alpha_+, alpha_-) with |a+|^2 + |a-|^2 = 1.
// Inputs within 1e-3 of unit norm are rescaled; larger deviations throw
// NormalizationError.
class AmcsParams {
public:
    AmcsParams(int n_total, Complex alpha_plus, Complex alpha_minus);

    // Real-amplitude parameterization: alpha_+ = sqrt(p), alpha_- = sqrt(1-p).
    static AmcsParams from_p(int n_total, double p);

    int n_total() const noexcept { return n_total_; }
    Complex alpha_plus() const noexcept { return alpha_plus_; }
    Complex alpha_minus() const noexcept { return alpha_minus_; }

    // |alpha_+|^2, the mean fraction of photons in the "+" mode.
    double p_plus() const noexcept { return std::norm(alpha_plus_); }

private:
    int n_total_;
    Complex alpha_plus_;
    Complex alpha_minus_;
};

// Normalized Stokes vector r = (2/N) <J>; |r| = 1 exactly on AMCS, < 1 on
// entangled sector states.
struct StokesVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Eigen::Vector3d to_vector() const { return {x, y, z}; }
};

// Hamiltonian acting on a fixed sector. Either the cross-Kerr coupling
// eps * n_+ * n_- (diagonal in the sector basis, any N) or an explicit
// Hermitian matrix pinned to one sector dimension.
class HamiltonianSpec {
public:
    static HamiltonianSpec cross_kerr(double epsilon);

    // Throws std::invalid_argument unless h is square and Hermitian within
    // 1e-12 entrywise.
    static HamiltonianSpec general(Eigen::MatrixXcd h);

    bool is_cross_kerr() const noexcept { return std::holds_alternative<double>(h_); }

    // Cross-Kerr coupling strength; throws std::logic_error on a general spec.
    double epsilon() const;

    // Explicit matrix; throws std::logic_error on a cross-Kerr spec.
    const Eigen::MatrixXcd& matrix() const;

    // Sector dimension a general matrix is pinned to, or -1 for cross-Kerr
    // (which is defined on every sector).
    int sector_dim() const;

private:
    explicit HamiltonianSpec(std::variant<double, Eigen::MatrixXcd> h) : h_(std::move(h)) {}

    std::variant<double, Eigen::MatrixXcd> h_;
};

enum class Mode { plus, minus };

// Gradient of <H> on the AMCS family with respect to the conjugated mode
// amplitudes, at fixed N.
struct AmcsGradient {
    Complex wrt_alpha_plus_conj;
    Complex wrt_alpha_minus_conj;
};

struct EnergyMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// ------------------------------- operations --------------------------------

// Expands the AMCS into sector amplitudes c_k = binom(N,k)^(1/2) a+^k a-^(N-k).
// Result has unit norm to machine precision.
FockStateN build_amcs(const AmcsParams& params);

// Mode annihilation operator, mapping sector N to sector N - 1. The result is
// intentionally not renormalized. Throws SectorUnderflow for N = 0.
FockStateN apply_annihilation(const FockStateN& state, Mode mode);

// Dense matrix of the Hamiltonian on sector n_total. Throws DimensionMismatch
// when a general matrix is pinned to a different sector.
Eigen::MatrixXcd hamiltonian_matrix(const HamiltonianSpec& spec, int n_total);

// H applied to raw sector amplitudes; avoids materializing the matrix for
// cross-Kerr specs.
Eigen::VectorXcd apply_hamiltonian(const HamiltonianSpec& spec, int n_total,
                                   const Eigen::VectorXcd& v);

// <state|H|state>, real by Hermiticity.
double expectation(const FockStateN& state, const HamiltonianSpec& spec);

// Mean and variance of H in the given state. Variance is clamped at 0.
EnergyMoments energy_moments(const FockStateN& state, const HamiltonianSpec& spec);

// d<H>/d(conj(alpha_+-)) on the AMCS family, computed through the sector-
// lowering identity: the derivative equals sqrt(N) <s_{N-1}| a_+- H |s_N>.
// Throws SectorUnderflow for N = 0.
AmcsGradient grad_expectation(const AmcsParams& params, const HamiltonianSpec& spec);

// Normalized Stokes vector of a sector state. Throws SectorUnderflow for N = 0
// (the vacuum sector carries no polarization).
StokesVector stokes_of_state(const FockStateN& state);

// Closed form of stokes_of_state(build_amcs(params)):
// r_x + i r_y = 2 conj(a+) a-, r_z = |a+|^2 - |a-|^2.
StokesVector stokes_of_amcs(const AmcsParams& params);

}  // namespace sqsl
