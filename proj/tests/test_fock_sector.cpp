#include "doctest.h"

#include <cmath>
#include <numbers>

#include "stokes_qsl/fock_sector.hpp"
#include "test_support.hpp"

using namespace sqsl;
using testsup::make_rng;
using testsup::random_amcs;
using testsup::random_hermitian;

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

// ------------------------------ state types --------------------------------

TEST_CASE("FockStateN normalizes on construction and validates input") {
    Eigen::VectorXcd c(3);
    c << 1.0, 2.0, 2.0;
    const FockStateN s(2, c);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.amplitudes()[1].real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    CHECK_THROWS_AS(FockStateN(3, c), DimensionMismatch);
    CHECK_THROWS_AS(FockStateN(2, Eigen::VectorXcd::Zero(3)), NormalizationError);
    CHECK_THROWS_AS(FockStateN(-1, c), std::invalid_argument);
}

TEST_CASE("AmcsParams renormalizes slightly-off inputs and rejects bad ones") {
    // Unit norm is kept exactly.
    const AmcsParams exact(3, kInvSqrt2, kInvSqrt2);
    CHECK(std::norm(exact.alpha_plus()) + std::norm(exact.alpha_minus()) ==
          doctest::Approx(1.0).epsilon(1e-15));

    // |a+|^2 + |a-|^2 = 1.001, inside the 1e-3 window: rescaled to unit norm.
    const AmcsParams nudged(10, Complex(0.95, 0.0), Complex(0.29, 0.12));
    CHECK(std::norm(nudged.alpha_plus()) + std::norm(nudged.alpha_minus()) ==
          doctest::Approx(1.0).epsilon(1e-15));

    // Deviation 2e-3 is outside the window.
    CHECK_THROWS_AS(AmcsParams(2, std::sqrt(1.002), 0.0), NormalizationError);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(AmcsParams(2, Complex(nan, 0.0), 0.0), NormalizationError);

    const AmcsParams fromp = AmcsParams::from_p(10, 0.9);
    CHECK(fromp.p_plus() == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(fromp.alpha_minus().real() == doctest::Approx(std::sqrt(0.1)).epsilon(1e-15));
    CHECK_THROWS_AS(AmcsParams::from_p(2, 1.5), std::invalid_argument);
}

// -------------------------------- build_amcs --------------------------------

TEST_CASE("build_amcs reproduces hand-expanded amplitudes") {
    // N=1, all photons in the + mode: the only nonzero amplitude is k=1.
    const FockStateN one_plus = build_amcs(AmcsParams(1, 1.0, 0.0));
    CHECK(std::abs(one_plus.amplitudes()[0]) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(one_plus.amplitudes()[1] - 1.0) < 1e-14);

    // N=2, balanced real amplitudes: c = (1/2, 1/sqrt(2), 1/2).
    const FockStateN balanced = build_amcs(AmcsParams(2, kInvSqrt2, kInvSqrt2));
    CHECK(std::abs(balanced.amplitudes()[0] - 0.5) < 1e-14);
    CHECK(std::abs(balanced.amplitudes()[1] - kInvSqrt2) < 1e-14);
    CHECK(std::abs(balanced.amplitudes()[2] - 0.5) < 1e-14);

    // N=2 with a phase on the - mode: c_0 = (i/sqrt2)^2 = -1/2, c_1 = i/sqrt2.
    const FockStateN phased = build_amcs(AmcsParams(2, kInvSqrt2, Complex(0.0, kInvSqrt2)));
    CHECK(std::abs(phased.amplitudes()[0] - Complex(-0.5, 0.0)) < 1e-14);
    CHECK(std::abs(phased.amplitudes()[1] - Complex(0.0, kInvSqrt2)) < 1e-14);
    CHECK(std::abs(phased.amplitudes()[2] - Complex(0.5, 0.0)) < 1e-14);

    // The vacuum sector is the single basis ket.
    const FockStateN vac = build_amcs(AmcsParams(0, 1.0, 0.0));
    CHECK(vac.amplitudes()[0] == Complex(1.0, 0.0));
}

TEST_CASE("build_amcs matches the raw binomial polynomial") {
    auto rng = make_rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 25);
        const AmcsParams params = random_amcs(rng, n);
        const Eigen::VectorXcd direct =
            testsup::raw_amcs(n, params.alpha_plus(), params.alpha_minus());
        const FockStateN built = build_amcs(params);
        CHECK((built.amplitudes() - direct / direct.norm()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("build_amcs is unit norm and finite up to the photon-number cap") {
    auto rng = make_rng(12);
    for (const int n : {1, 2, 17, 200, 1500, kMaxPhotonNumber}) {
        const AmcsParams params = random_amcs(rng, n);
        const FockStateN s = build_amcs(params);
        CHECK(s.amplitudes().allFinite());
        CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    }
    CHECK_THROWS_AS(AmcsParams(kMaxPhotonNumber + 1, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("build_amcs peaks near N p") {
    const int n = 1000;
    const FockStateN s = build_amcs(AmcsParams::from_p(n, 0.3));
    int argmax = 0;
    for (int k = 1; k <= n; ++k) {
        if (std::abs(s.amplitudes()[k]) > std::abs(s.amplitudes()[argmax])) argmax = k;
    }
    CHECK(std::abs(argmax - 300) <= 1);
}

// ----------------------------- apply_annihilation ---------------------------

TEST_CASE("apply_annihilation acts correctly on basis kets") {
    // a_+ |1,1> = |0,1>, a_- |1,1> = |1,0> (both with factor sqrt(1)).
    const FockStateN mid = FockStateN::basis(2, 1);
    const FockStateN down_plus = apply_annihilation(mid, Mode::plus);
    CHECK(down_plus.n_total() == 1);
    CHECK(std::abs(down_plus.amplitudes()[0] - 1.0) < 1e-15);
    CHECK(std::abs(down_plus.amplitudes()[1]) < 1e-15);
    const FockStateN down_minus = apply_annihilation(mid, Mode::minus);
    CHECK(std::abs(down_minus.amplitudes()[1] - 1.0) < 1e-15);

    // Factors sqrt(n): a_+ |2,0> = sqrt(2) |1,0>.
    const FockStateN top = FockStateN::basis(2, 2);
    const FockStateN lowered = apply_annihilation(top, Mode::plus);
    CHECK(std::abs(lowered.amplitudes()[1] - std::sqrt(2.0)) < 1e-15);

    CHECK_THROWS_AS(apply_annihilation(FockStateN::basis(0, 0), Mode::plus), SectorUnderflow);
}

TEST_CASE("AMCS are near-eigenstates of annihilation: a_pm s_N = sqrt(N) alpha_pm s_{N-1}") {
    auto rng = make_rng(13);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 30);
        const AmcsParams params = random_amcs(rng, n);
        const FockStateN s_n = build_amcs(params);
        const FockStateN s_lower =
            build_amcs(AmcsParams(n - 1, params.alpha_plus(), params.alpha_minus()));
        const double root_n = std::sqrt(static_cast<double>(n));

        const FockStateN ap = apply_annihilation(s_n, Mode::plus);
        const FockStateN am = apply_annihilation(s_n, Mode::minus);
        const Eigen::VectorXcd expect_p = root_n * params.alpha_plus() * s_lower.amplitudes();
        const Eigen::VectorXcd expect_m = root_n * params.alpha_minus() * s_lower.amplitudes();
        CHECK((ap.amplitudes() - expect_p).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((am.amplitudes() - expect_m).cwiseAbs().maxCoeff() < 1e-12);
    }
}

// -------------------------- Hamiltonians and energy --------------------------

TEST_CASE("cross-Kerr Hamiltonian is diagonal with entries eps k (N-k)") {
    const HamiltonianSpec spec = HamiltonianSpec::cross_kerr(0.5);
    const Eigen::MatrixXcd m = hamiltonian_matrix(spec, 4);
    for (int k = 0; k <= 4; ++k) {
        CHECK(m(k, k) == Complex(0.5 * k * (4 - k), 0.0));
        for (int l = 0; l <= 4; ++l) {
            if (l != k) CHECK(m(k, l) == Complex(0.0, 0.0));
        }
    }
}

TEST_CASE("general Hamiltonians are validated") {
    Eigen::MatrixXcd h(2, 2);
    h << 1.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 2.0;
    const HamiltonianSpec spec = HamiltonianSpec::general(h);
    CHECK(spec.sector_dim() == 2);
    CHECK_THROWS_AS(hamiltonian_matrix(spec, 3), DimensionMismatch);

    Eigen::MatrixXcd bad(2, 2);
    bad << 1.0, 1.0, -1.0, 2.0;
    CHECK_THROWS_AS(HamiltonianSpec::general(bad), std::invalid_argument);
}

TEST_CASE("apply_hamiltonian agrees with the dense matrix on both spec kinds") {
    auto rng = make_rng(14);
    const int n = 6;
    const AmcsParams params = random_amcs(rng, n);
    const FockStateN s = build_amcs(params);
    for (const HamiltonianSpec& spec :
         {HamiltonianSpec::cross_kerr(0.7), random_hermitian(rng, n + 1)}) {
        const Eigen::VectorXcd direct = hamiltonian_matrix(spec, n) * s.amplitudes();
        const Eigen::VectorXcd fast = apply_hamiltonian(spec, n, s.amplitudes());
        CHECK((direct - fast).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(apply_hamiltonian(HamiltonianSpec::cross_kerr(1.0), 3, s.amplitudes()),
                    DimensionMismatch);
}

TEST_CASE("cross-Kerr AMCS energy has the closed form eps N (N-1) p (1-p)") {
    // N=10, eps=0.05, p=0.9: 0.05 * 90 * 0.09 = 0.405.
    const double e =
        expectation(build_amcs(AmcsParams::from_p(10, 0.9)), HamiltonianSpec::cross_kerr(0.05));
    CHECK(e == doctest::Approx(0.405).epsilon(1e-12));

    auto rng = make_rng(15);
    for (int rep = 0; rep < 25; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 20);
        const double eps = -1.0 + 2e-2 * static_cast<double>(rng() % 100);
        const AmcsParams params = random_amcs(rng, n);
        const double p = params.p_plus();
        const double closed = eps * n * (n - 1.0) * p * (1.0 - p);
        const double direct = expectation(build_amcs(params), HamiltonianSpec::cross_kerr(eps));
        CHECK(direct == doctest::Approx(closed).epsilon(1e-10));
    }
}

TEST_CASE("energy_moments matches the dense quadratic forms") {
    auto rng = make_rng(16);
    const int n = 5;
    const HamiltonianSpec spec = random_hermitian(rng, n + 1);
    const AmcsParams params = random_amcs(rng, n);
    const FockStateN s = build_amcs(params);
    const Eigen::MatrixXcd h = hamiltonian_matrix(spec, n);
    const double mean = s.amplitudes().dot(h * s.amplitudes()).real();
    const double second = s.amplitudes().dot(h * h * s.amplitudes()).real();
    const EnergyMoments m = energy_moments(s, spec);
    CHECK(m.mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(m.variance == doctest::Approx(second - mean * mean).epsilon(1e-10));
    CHECK(m.variance >= 0.0);
}

// ------------------------------ grad_expectation -----------------------------

TEST_CASE("grad_expectation: hand-checked cross-Kerr point") {
    // <H> = eps N (N-1) |a+|^2 |a-|^2, so d<H>/d(conj a+) = eps N (N-1) a+ |a-|^2.
    // At N=2, eps=1, a+ = a- = 1/sqrt(2): g+ = 2 * (1/sqrt2) * 1/2 = 1/sqrt2.
    const AmcsGradient g = grad_expectation(AmcsParams(2, kInvSqrt2, kInvSqrt2),
                                            HamiltonianSpec::cross_kerr(1.0));
    CHECK(std::abs(g.wrt_alpha_plus_conj - kInvSqrt2) < 1e-13);
    CHECK(std::abs(g.wrt_alpha_minus_conj - kInvSqrt2) < 1e-13);
}

TEST_CASE("grad_expectation matches the cross-Kerr closed form") {
    // Off the unit sphere the energy is eps N (N-1) u v s^(N-2) with
    // u = |a+|^2, v = |a-|^2, s = u + v; differentiating and restricting to
    // s = 1 gives g+ = eps N (N-1) a+ v (1 + (N-2) u) and the mirror for g-.
    auto rng = make_rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 25);
        const double eps = 0.05 + 1e-2 * static_cast<double>(rng() % 200);
        const AmcsParams params = random_amcs(rng, n);
        const AmcsGradient g = grad_expectation(params, HamiltonianSpec::cross_kerr(eps));
        const double u = std::norm(params.alpha_plus());
        const double v = std::norm(params.alpha_minus());
        const double scale = eps * n * (n - 1.0);
        const Complex gp = scale * params.alpha_plus() * v * (1.0 + (n - 2.0) * u);
        const Complex gm = scale * params.alpha_minus() * u * (1.0 + (n - 2.0) * v);
        CHECK(std::abs(g.wrt_alpha_plus_conj - gp) < 1e-10 * (1.0 + std::abs(gp)));
        CHECK(std::abs(g.wrt_alpha_minus_conj - gm) < 1e-10 * (1.0 + std::abs(gm)));
    }
}

TEST_CASE("grad_expectation matches finite differences of the raw polynomial") {
    auto rng = make_rng(18);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const AmcsParams params = random_amcs(rng, n);
        const HamiltonianSpec spec = (rep % 2 == 0)
                                         ? HamiltonianSpec::cross_kerr(0.3 + 0.01 * (rng() % 100))
                                         : random_hermitian(rng, n + 1);
        const AmcsGradient g = grad_expectation(params, spec);
        const AmcsGradient fd =
            testsup::fd_gradient(spec, n, params.alpha_plus(), params.alpha_minus());
        const double scale = 1.0 + std::abs(fd.wrt_alpha_plus_conj) +
                             std::abs(fd.wrt_alpha_minus_conj);
        CHECK(std::abs(g.wrt_alpha_plus_conj - fd.wrt_alpha_plus_conj) < 1e-6 * scale);
        CHECK(std::abs(g.wrt_alpha_minus_conj - fd.wrt_alpha_minus_conj) < 1e-6 * scale);
    }
    CHECK_THROWS_AS(grad_expectation(AmcsParams(0, 1.0, 0.0), HamiltonianSpec::cross_kerr(1.0)),
                    SectorUnderflow);
}

// ------------------------------- Stokes vectors ------------------------------

TEST_CASE("stokes_of_state: hand values and the AMCS closed form") {
    // Real amplitudes sqrt(0.9), sqrt(0.1): r = (0.6, 0, 0.8).
    const StokesVector r = stokes_of_state(build_amcs(AmcsParams::from_p(10, 0.9)));
    CHECK(r.x == doctest::Approx(0.6).epsilon(1e-13));
    CHECK(r.y == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(r.z == doctest::Approx(0.8).epsilon(1e-13));

    // |1,1> carries no mean polarization.
    const StokesVector r0 = stokes_of_state(FockStateN::basis(2, 1));
    CHECK(r0.norm() < 1e-15);

    // (|2,0> + |0,2>)/sqrt(2) as well: no adjacent-k coherences.
    Eigen::VectorXcd cat(3);
    cat << kInvSqrt2, 0.0, kInvSqrt2;
    CHECK(stokes_of_state(FockStateN::raw(2, cat)).norm() < 1e-15);

    CHECK_THROWS_AS(stokes_of_state(FockStateN::basis(0, 0)), SectorUnderflow);
}

TEST_CASE("AMCS Stokes vectors are unit length; contraction route equals closed form") {
    auto rng = make_rng(19);
    for (int rep = 0; rep < 60; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 40);
        const AmcsParams params = random_amcs(rng, n);
        const StokesVector direct = stokes_of_state(build_amcs(params));
        const StokesVector closed = stokes_of_amcs(params);
        CHECK(std::abs(direct.x - closed.x) < 1e-12);
        CHECK(std::abs(direct.y - closed.y) < 1e-12);
        CHECK(std::abs(direct.z - closed.z) < 1e-12);
        CHECK(std::abs(closed.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("sector states have Stokes length at most 1") {
    auto rng = make_rng(20);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 12);
        Eigen::VectorXcd c(n + 1);
        for (int k = 0; k <= n; ++k) c[k] = Complex(normal(rng), normal(rng));
        const StokesVector r = stokes_of_state(FockStateN(n, c));
        CHECK(r.norm() <= 1.0 + 1e-12);
    }
}
