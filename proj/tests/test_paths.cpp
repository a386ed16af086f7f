#include "adpath/error.hpp"
#include "adpath/paths.hpp"
#include "adpath/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace adpath;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix diag01() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 1) = 1.0;
    return m;
}

} // namespace

TEST_CASE("linear path endpoints, midpoint and derivative") {
    const HamiltonianPath p = linear_path(HermitianOperator(diag01()), HermitianOperator(0.5 * pauli::x()));
    CHECK(max_abs(p.H(0.0).matrix() - diag01()) == 0.0);
    CHECK(max_abs(p.H(1.0).matrix() - 0.5 * pauli::x()) <= 1e-15);
    CHECK(max_abs(p.H(0.5).matrix() - 0.5 * (diag01() + 0.5 * pauli::x())) <= 1e-15);
    CHECK(max_abs(p.dH(0.5).matrix() - (0.5 * pauli::x() - diag01())) <= 1e-15);
    CHECK(p.derivative_defect() <= 1e-6);
    CHECK(p.variant() == PathVariant::Linear);
}

TEST_CASE("linear path input validation") {
    try {
        linear_path(HermitianOperator::identity(2), HermitianOperator::identity(3));
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
}

TEST_CASE("constant Bloch path") {
    const BlochPath p = bloch::fixed_z();
    CHECK(p.min_gap() == doctest::Approx(1.0));
    for (double q : {0.0, 0.5, 1.0}) CHECK(p.bloch_speed(q) == 0.0);
}

TEST_CASE("quarter great circle has unit gap and speed pi/2") {
    const BlochPath p = bloch::quarter_circle(1.0);
    CHECK(p.min_gap() == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i <= 20; ++i) {
        const double q = i / 20.0;
        CHECK(p.bloch_speed(q) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
        CHECK(std::abs(p.direction(q).norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("straight chord has its minimal gap at the midpoint") {
    const BlochPath p = bloch::linear_xz();
    CHECK(p.min_gap() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(p.argmin_gap() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("gap closure is an error") {
    try {
        bloch_path([](double q) { return Vec3(0, 0, 1 - 2 * q); }, [](double) { return Vec3(0, 0, -2); });
        FAIL("expected GapClosure");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GapClosure);
    }
}

TEST_CASE("Bloch and Hamiltonian views agree on the gap") {
    for (const BlochPath& p : {bloch::quarter_circle(0.7), bloch::linear_xz(), bloch::dipped_arc(0.5),
                               bloch::rotating(2.0, 1.3)}) {
        const HamiltonianPath h = p.hamiltonian_path();
        CHECK(h.derivative_defect() <= 1e-6);
        for (int i = 0; i <= 50; ++i) {
            const double q = i / 50.0;
            const SpectralFrame f = spectral_frame(h.H(q));
            CHECK(std::abs((f.eigenvalues(1) - f.eigenvalues(0)) - p.gap(q)) <= 1e-10);
        }
    }
}

TEST_CASE("uniform schedule") {
    const Schedule s = uniform_schedule();
    CHECK(s.eval(0.0).q == 0.0);
    CHECK(s.eval(0.0).qdot == 1.0);
    CHECK(s.eval(0.25).q == 0.25);
    CHECK(s.eval(1.0).q == 1.0);
    // Composing with a path leaves H(q(s)) = H(s).
    const HamiltonianPath p = bloch::dipped_arc().hamiltonian_path();
    CHECK(max_abs(p.H(s.q(0.37)).matrix() - p.H(0.37).matrix()) == 0.0);
}

TEST_CASE("schedule from a grid hits its nodes") {
    const std::vector<double> a{0.0, 0.5, 1.0};
    CHECK(schedule_from_grid(a).q(0.5) == doctest::Approx(0.5));
    const std::vector<double> b{0.0, 0.25, 1.0};
    const Schedule sb = schedule_from_grid(b);
    CHECK(sb.q(0.5) == doctest::Approx(0.25));
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const auto pt = sb.eval(i / 1000.0);
        CHECK(pt.q > prev);
        prev = pt.q;
    }
    CHECK(sb.q(0.0) == 0.0);
    CHECK(sb.q(1.0) == 1.0);
}

TEST_CASE("dense grid of s^2 reproduces the derivative") {
    std::vector<double> q;
    for (int i = 0; i <= 200; ++i) q.push_back((i / 200.0) * (i / 200.0));
    const Schedule s = schedule_from_grid(q);
    CHECK(s.qdot(0.5) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(s.q(0.3) == doctest::Approx(0.09).epsilon(1e-4));
}

TEST_CASE("grid round trip reproduces node values") {
    std::vector<double> q;
    for (int i = 0; i <= 40; ++i) {
        const double s = i / 40.0;
        q.push_back(s + 0.2 * std::sin(std::numbers::pi * s) * s);
    }
    q.back() = 1.0;
    const Schedule a = schedule_from_grid(q);
    std::vector<double> resampled;
    for (int i = 0; i <= 40; ++i) resampled.push_back(a.q(i / 40.0));
    const Schedule b = schedule_from_grid(resampled);
    for (int i = 0; i <= 40; ++i) CHECK(std::abs(b.q(i / 40.0) - a.q(i / 40.0)) <= 1e-12);
}

TEST_CASE("non-monotone grids are rejected") {
    const std::vector<double> bad{0.0, 0.6, 0.4, 1.0};
    try {
        schedule_from_grid(bad);
        FAIL("expected NotMonotone");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotMonotone);
    }
    const std::vector<double> wrong_end{0.0, 0.5, 0.9};
    CHECK_THROWS_AS(schedule_from_grid(wrong_end), Error);
}
