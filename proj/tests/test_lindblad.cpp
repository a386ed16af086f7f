#include "adpath/error.hpp"
#include "adpath/lindblad.hpp"
#include "adpath/random.hpp"
#include "adpath/variational.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace adpath;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix ket_bra(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
    Matrix m = Matrix::Zero(n, n);
    m(i, j) = 1.0;
    return m;
}

Matrix random_matrix(Eigen::Index n, FixtureRng& rng) {
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return m;
}

void check_trajectory_hygiene(const Trajectory& t) {
    double prev = -1.0;
    for (const auto& smp : t.samples) {
        CHECK(smp.s > prev);
        prev = smp.s;
        CHECK(smp.rho.trace_error() <= kTrajectoryTraceTol);
        CHECK(smp.rho.hermiticity_error() <= kTrajectoryHermTol);
        CHECK(smp.rho.min_eigenvalue() >= -kTrajectoryPosTol);
    }
    CHECK(t.samples.front().s == 0.0);
    CHECK(t.samples.back().s == 1.0);
}

} // namespace

TEST_CASE("vectorization is column stacking") {
    Matrix A(2, 2);
    A << 1.0, 2.0, 3.0, 4.0;
    const Vector v = vectorize(A);
    CHECK(v(1) == cplx(3.0));
    CHECK(v(2) == cplx(2.0));
    CHECK(max_abs(unvectorize(v, 2) - A) == 0.0);
}

TEST_CASE("pure Hamiltonian generator rotates coherences") {
    const HermitianOperator H(0.5 * pauli::z());
    const Superoperator L = lindblad_generator(H, {});
    const Matrix rho = ket_bra(2, 0, 1);
    // e_0 - e_1 for the diagonal entries of sigma_z / 2 in the computational basis
    const double e0 = 0.5, e1 = -0.5;
    CHECK(max_abs(L.apply(rho) - cplx(0, -1) * (e0 - e1) * rho) <= 1e-15);
}

TEST_CASE("lindblad_generator matches the direct formula") {
    FixtureRng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        const HermitianOperator H = random_hermitian(n, rng);
        std::vector<Matrix> jumps{random_matrix(n, rng), random_matrix(n, rng)};
        const Superoperator L = lindblad_generator(H, jumps);
        const Matrix rho = random_density(n, rng).matrix();
        CHECK(max_abs(L.apply(rho) - oracle::lindblad_apply(H.matrix(), jumps, rho)) <= 1e-12);
        CHECK(L.trace_preservation_defect() <= 1e-10);
    }
    CHECK_THROWS_AS(lindblad_generator(HermitianOperator::identity(2), {Matrix::Identity(3, 3)}), Error);
}

TEST_CASE("a single commuting jump keeps P_0 stationary") {
    const SpectralFrame f = spectral_frame(HermitianOperator(0.5 * pauli::x()));
    const Superoperator L = lindblad_generator(HermitianOperator(0.5 * pauli::x()), {std::sqrt(0.7) * f.P(0)});
    CHECK(max_abs(L.apply(f.P(0))) <= 1e-14);
}

TEST_CASE("general dephasing equals the jump-operator form and the direct formula") {
    for (std::uint64_t seed = 30; seed < 40; ++seed) {
        FixtureRng rng(seed);
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 4);
        const HermitianOperator H = random_hermitian(n, rng);
        const RealMatrix gamma = random_psd(n, rng);
        const SpectralFrame f = spectral_frame(H);
        const Superoperator Lg = general_dephasing_generator(f, gamma);
        const DephasingModel model = DephasingModel::matrix(gamma);
        const Superoperator Lj = lindblad_generator(H, model.jump_operators(f));
        CAPTURE(seed);
        CHECK(max_abs(Lg.matrix() - Lj.matrix()) <= 1e-10);
        const Matrix rho = random_density(n, rng).matrix();
        CHECK(max_abs(Lg.apply(rho) - oracle::dephasing_apply(H.matrix(), gamma, rho)) <= 1e-10);
        CHECK(Lg.trace_preservation_defect() <= 1e-10);
        for (Eigen::Index a = 0; a < n; ++a) CHECK(max_abs(Lg.apply(f.P(a))) <= 1e-10);
    }
}

TEST_CASE("zero rate matrix gives the pure Hamiltonian generator") {
    FixtureRng rng(3);
    const HermitianOperator H = random_hermitian(3, rng);
    const SpectralFrame f = spectral_frame(H);
    const Superoperator L0 = general_dephasing_generator(f, RealMatrix::Zero(3, 3));
    CHECK(max_abs(L0.matrix() - lindblad_generator(H, {}).matrix()) <= 1e-12);
}

TEST_CASE("two-level gamma0 * identity corresponds to scalar rate 2 gamma0") {
    // Expanding the general form with gamma = g0 I gives coherence decay 2 g0, so it matches
    // the scalar generator at rate 2 g0.
    const SpectralFrame f = spectral_frame(HermitianOperator(0.5 * pauli::dot(Vec3(0.3, -0.2, 0.9))));
    const double g0 = 0.35;
    const Superoperator Lm = general_dephasing_generator(f, g0 * RealMatrix::Identity(2, 2));
    const Superoperator Ls = dephasing_generator(f, 2.0 * g0);
    CHECK(max_abs(Lm.matrix() - Ls.matrix()) <= 1e-12);
}

TEST_CASE("rate matrices that are not PSD are rejected") {
    const SpectralFrame f = spectral_frame(HermitianOperator(0.5 * pauli::z()));
    RealMatrix g(2, 2);
    g << 1.0, 2.0, 2.0, 1.0;
    try {
        general_dephasing_generator(f, g);
        FAIL("expected NotPSD");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPSD);
    }
    CHECK_THROWS_AS(DephasingModel::matrix(g), Error);
}

TEST_CASE("scalar dephasing: kernel and coherence eigenvalues") {
    FixtureRng rng(17);
    const HermitianOperator H = random_hermitian(3, rng);
    const SpectralFrame f = spectral_frame(H);
    const double gamma = 0.8;
    const Superoperator L = dephasing_generator(f, gamma);
    // diagonal in the eigenbasis
    const Matrix diag = 0.2 * f.P(0) + 0.5 * f.P(1) + 0.3 * f.P(2);
    CHECK(max_abs(L.apply(diag)) <= 1e-12);
    const Matrix A = random_matrix(3, rng);
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            if (a == b) continue;
            const Matrix block = f.P(a) * A * f.P(b);
            const cplx lam(-gamma, -(f.eigenvalues(a) - f.eigenvalues(b)));
            CHECK(max_abs(L.apply(block) - lam * block) <= 1e-12);
            const cplx mu(-gamma, f.eigenvalues(a) - f.eigenvalues(b));
            CHECK(max_abs(adjoint_apply(L, block) - mu * block) <= 1e-12);
        }
    }
    try {
        dephasing_generator(f, 0.0);
        FAIL("expected NonPositiveRate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonPositiveRate);
    }
}

TEST_CASE("small gamma approaches the pure Hamiltonian generator") {
    const HermitianOperator H(0.5 * pauli::dot(Vec3(1, 0, 1)));
    const SpectralFrame f = spectral_frame(H);
    const Matrix diff = dephasing_generator(f, 1e-9).matrix() - lindblad_generator(H, {}).matrix();
    CHECK(max_abs(diff) <= 2e-9);
}

TEST_CASE("adjoint: identity, and duality on random pairs for every constructor") {
    FixtureRng rng(44);
    const HermitianOperator H = random_hermitian(3, rng);
    const SpectralFrame f = spectral_frame(H);
    const std::vector<Superoperator> gens{
        dephasing_generator(f, 0.6), general_dephasing_generator(f, random_psd(3, rng)),
        lindblad_generator(H, {random_matrix(3, rng)})};
    for (const Superoperator& L : gens) {
        CHECK(max_abs(adjoint_apply(L, Matrix::Identity(3, 3))) <= 1e-12);
        for (int i = 0; i < 20; ++i) {
            const Matrix A = random_matrix(3, rng);
            const Matrix rho = random_density(3, rng).matrix();
            const cplx lhs = (adjoint_apply(L, A) * rho).trace();
            const cplx rhs = (A * L.apply(rho)).trace();
            CHECK(std::abs(lhs - rhs) <= 1e-10);
        }
    }
    CHECK_THROWS_AS(adjoint_apply(gens[0], Matrix::Identity(2, 2)), Error);
}

TEST_CASE("witness operator solves the adjoint equation") {
    SUBCASE("zero derivative gives zero witness") {
        const SpectralFrame f = spectral_frame(HermitianOperator(0.5 * pauli::z()));
        CHECK(max_abs(witness_X(f, HermitianOperator::zero(2), 1.0)) == 0.0);
    }
    SUBCASE("rotating two-level path, gamma 1") {
        const HamiltonianPath p = bloch::rotating(1.0, 1.0).hamiltonian_path();
        const double q = 0.3;
        const SpectralFrame f = spectral_frame(p.H(q), kDefaultGapTol, q);
        const HermitianOperator dP0 = projection_derivative(f, p.dH(q), 0);
        const Matrix X = witness_X(f, dP0, 1.0);
        CHECK(max_abs(adjoint_apply(dephasing_generator(f, 1.0), X) - dP0.matrix()) <= 1e-10);
    }
    SUBCASE("seeded three-level linear path, gamma 0.5") {
        FixtureRng rng(8);
        const HamiltonianPath p = linear_path(random_hermitian(3, rng), random_hermitian(3, rng));
        const double q = 0.45;
        const SpectralFrame f = spectral_frame(p.H(q), kDefaultGapTol, q);
        const HermitianOperator dP0 = projection_derivative(f, p.dH(q), 0);
        const Matrix X = witness_X(f, dP0, 0.5);
        CHECK(max_abs(adjoint_apply(dephasing_generator(f, 0.5), X) - dP0.matrix()) <= 1e-10);
    }
}

TEST_CASE("constant path: P_0 is stationary under evolution") {
    FixtureRng rng(9);
    const HermitianOperator H = random_hermitian(3, rng);
    const HamiltonianPath p(
        3, [m = H.matrix()](double) { return m; }, [](double) -> Matrix { return Matrix::Zero(3, 3); });
    const SpectralFrame f = spectral_frame(H);
    EvolveConfig cfg;
    cfg.samples = 11;
    const Trajectory t = evolve(p, uniform_schedule(), DephasingModel::scalar(0.7), 0.05, DensityMatrix(f.P(0)), cfg);
    for (const auto& smp : t.samples) CHECK(max_abs(smp.rho.matrix() - f.P(0)) <= 1e-12);
    check_trajectory_hygiene(t);
    for (const auto& pt : measured_tunneling(t, p)) CHECK(std::abs(pt.T) <= 1e-12);
}

TEST_CASE("frozen q: every spectral projection is stationary") {
    const BlochPath bp = bloch::dipped_arc(0.4);
    const HamiltonianPath p = bp.hamiltonian_path();
    // Schedule pinned at q0: the path is reparametrized to a constant.
    const double q0 = 0.37;
    const HamiltonianPath frozen(
        2, [p, q0](double) { return p.H(q0).matrix(); }, [](double) -> Matrix { return Matrix::Zero(2, 2); });
    const SpectralFrame f = spectral_frame(p.H(q0));
    for (std::size_t a = 0; a < 2; ++a) {
        EvolveConfig cfg;
        cfg.samples = 5;
        const Trajectory t =
            evolve(frozen, uniform_schedule(), DephasingModel::scalar(1.3), 0.02, DensityMatrix(f.P(a)), cfg);
        for (const auto& smp : t.samples) CHECK(max_abs(smp.rho.matrix() - f.P(a)) <= 1e-10);
    }
}

TEST_CASE("unitary constant segment precesses like the SU(2) propagator") {
    const Vec3 g(0.3, -0.4, 1.1);
    const Matrix Hm = oracle::bloch_hamiltonian(g);
    const HamiltonianPath p(
        2, [Hm](double) { return Hm; }, [](double) -> Matrix { return Matrix::Zero(2, 2); });
    // A pure state not aligned with g.
    Eigen::Vector2cd psi(1.0, cplx(0.0, 1.0));
    psi.normalize();
    const Matrix rho0 = psi * psi.adjoint();
    const double eps = 0.1;  // total fast time 1/eps
    EvolveConfig cfg;
    cfg.samples = 11;
    const Trajectory t = evolve(p, uniform_schedule(), DephasingModel::none(2), eps, DensityMatrix(rho0), cfg);
    for (const auto& smp : t.samples) {
        const Matrix expected = oracle::unitary_step(Hm, smp.s / eps, rho0);
        CHECK(max_abs(smp.rho.matrix() - expected) <= 1e-10);
    }
}

TEST_CASE("dense propagation agrees with the integrator on a frozen generator") {
    FixtureRng rng(77);
    const HermitianOperator H = random_hermitian(3, rng);
    const SpectralFrame f = spectral_frame(H);
    const RealMatrix gamma = random_psd(3, rng);
    const DephasingModel model = DephasingModel::matrix(gamma);
    const Matrix rho0 = random_density(3, rng).matrix();
    const HamiltonianPath p(
        3, [m = H.matrix()](double) { return m; }, [](double) -> Matrix { return Matrix::Zero(3, 3); });
    EvolveConfig cfg;
    cfg.samples = 2;
    const double eps = 0.25;
    const Trajectory t = evolve(p, uniform_schedule(), model, eps, DensityMatrix(rho0), cfg);
    const Matrix dense = propagate_dense(model.generator(f), 1.0 / eps, rho0);
    CHECK(max_abs(t.final_state().matrix() - dense) <= 1e-10);
}

TEST_CASE("trajectories stay physical and adhere to the instantaneous projection") {
    const BlochPath bp = bloch::quarter_circle(1.0);
    const HamiltonianPath p = bp.hamiltonian_path();
    const DensityMatrix rho0(spectral_frame(p.H(0.0)).P(0));
    std::vector<double> dev;
    for (double eps : {0.02, 0.01}) {
        EvolveConfig cfg;
        cfg.samples = 101;
        const Trajectory t = evolve(p, uniform_schedule(), DephasingModel::scalar(1.0), eps, rho0, cfg);
        check_trajectory_hygiene(t);
        double worst = 0.0;
        for (const auto& smp : t.samples) {
            if (smp.s < 0.2) continue;  // skip the initial transient
            const Matrix P0 = spectral_frame(p.H(smp.q)).P(0);
            worst = std::max(worst, (smp.rho.matrix() - P0).norm());
        }
        dev.push_back(worst);
    }
    const double ratio = dev[0] / dev[1];
    CAPTURE(ratio);
    CHECK(ratio >= 1.6);
    CHECK(ratio <= 2.4);
}

TEST_CASE("regime warning when epsilon is not small") {
    const HamiltonianPath p = bloch::quarter_circle(1.0).hamiltonian_path();
    EvolveConfig cfg;
    cfg.samples = 3;
    const DensityMatrix rho0(spectral_frame(p.H(0.0)).P(0));
    const Trajectory t = evolve(p, uniform_schedule(), DephasingModel::scalar(1.0), 0.2, rho0, cfg);
    CHECK(!t.warnings.empty());
    const Trajectory u = evolve(p, uniform_schedule(), DephasingModel::scalar(1.0), 0.05, rho0, cfg);
    CHECK(u.warnings.empty());
}

TEST_CASE("step limit and invalid input") {
    const HamiltonianPath p = bloch::quarter_circle(1.0).hamiltonian_path();
    const DensityMatrix rho0(spectral_frame(p.H(0.0)).P(0));
    EvolveConfig cfg;
    cfg.max_steps = 64;
    try {
        evolve(p, uniform_schedule(), DephasingModel::scalar(1.0), 0.01, rho0, cfg);
        FAIL("expected StepLimitExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::StepLimitExceeded);
    }
    CHECK_THROWS_AS(evolve(p, uniform_schedule(), DephasingModel::scalar(1.0), -1.0, rho0), Error);
    CHECK_THROWS_AS(evolve(p, uniform_schedule(), DephasingModel::scalar(1.0), 0.1, DensityMatrix::maximally_mixed(3)),
                    Error);
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix{bad}, Error);
}
