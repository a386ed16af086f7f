#include "adpath/error.hpp"
#include "adpath/random.hpp"
#include "adpath/spectral.hpp"
#include "adpath/variational.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace adpath;

namespace {

const RateFn kGammaOne = [](double) { return 1.0; };

} // namespace

TEST_CASE("constant-direction path has zero mass") {
    const HamiltonianPath p = bloch::fixed_z().hamiltonian_path();
    for (double q : {0.0, 0.5, 1.0}) CHECK(mass(p, kGammaOne, q) == 0.0);
}

TEST_CASE("general mass formula equals the two-level formula") {
    for (const BlochPath& bp : {bloch::quarter_circle(1.0), bloch::rotating(1.7, 0.6), bloch::linear_xz(),
                                bloch::dipped_arc(0.6)}) {
        const HamiltonianPath p = bp.hamiltonian_path();
        for (double gamma : {0.1, 1.0, 3.0}) {
            const RateFn g = [gamma](double) { return gamma; };
            for (int i = 0; i <= 20; ++i) {
                const double q = i / 20.0;
                CHECK(std::abs(mass(p, g, q) - mass_two_level(bp, g, q)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("three-level mass matches a finite-difference oracle") {
    FixtureRng rng(4);
    const HamiltonianPath p = linear_path(random_hermitian(3, rng), random_hermitian(3, rng));
    const double m = mass(p, kGammaOne, 0.5);
    const double ref = oracle::fd_mass([&](double x) { return p.H(x).matrix(); }, 1.0, 0.5);
    CHECK(m >= 0.0);
    CHECK(m == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("two-level mass: closed-form values and limits") {
    const BlochPath qc = bloch::quarter_circle(1.0);
    CHECK(mass_two_level(qc, kGammaOne, 0.3) == doctest::Approx(std::numbers::pi * std::numbers::pi / 32).epsilon(1e-12));
    CHECK(mass_two_level(qc, [](double) { return 1e-12; }, 0.3) <= 1e-12);
    // Maximum over gamma at gamma = g with value |g'|^2 / (8 g).
    const BlochPath r = bloch::quarter_circle(2.0);
    const double speed = std::numbers::pi / 2;
    const double peak = mass_two_level(r, [](double) { return 2.0; }, 0.4);
    CHECK(peak == doctest::Approx(speed * speed / 16.0).epsilon(1e-12));
    for (double gamma : {1.5, 1.9, 2.1, 3.0}) {
        CHECK(mass_two_level(r, [gamma](double) { return gamma; }, 0.4) < peak);
    }
}

TEST_CASE("mass is a function of q only") {
    const BlochPath bp = bloch::dipped_arc(0.5);
    const MassProfile mp = mass_profile(bp, kGammaOne);
    std::vector<double> grid;
    for (int i = 0; i <= 30; ++i) grid.push_back(std::pow(i / 30.0, 2));
    const Schedule a = uniform_schedule();
    const Schedule b = schedule_from_grid(grid);
    for (double q : {0.1, 0.5, 0.9}) {
        const double sa = q;
        double lo = 0, hi = 1;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (b.q(mid) < q ? lo : hi) = mid;
        }
        CHECK(mp(a.q(sa)) == doctest::Approx(mp(b.q(0.5 * (lo + hi)))).epsilon(1e-9));
    }
    for (double v : mp.values) CHECK(v >= 0.0);
}

TEST_CASE("optimal schedule for constant mass is uniform") {
    const MassProfile mp = mass_profile([](double) { return 0.7; });
    const OptimalSchedule opt = tau_and_schedule(mp);
    CHECK(opt.tau == doctest::Approx(0.7).epsilon(1e-12));
    for (double s : {0.0, 0.2, 0.5, 0.9, 1.0}) CHECK(std::abs(opt.schedule.q(s) - s) <= 1e-10);
}

TEST_CASE("optimal schedule for M = q^2") {
    const MassProfile mp = mass_profile([](double q) { return q * q; });
    const OptimalSchedule opt = tau_and_schedule(mp);
    CHECK(std::abs(opt.tau - 0.25) <= 1e-10);
    for (double s : {0.01, 0.1, 0.3, 0.6, 0.99}) CHECK(std::abs(opt.schedule.q(s) - std::sqrt(s)) <= 1e-6);
    CHECK(opt.schedule.q(0.0) == 0.0);
    CHECK(opt.schedule.q(1.0) == 1.0);
    // Uniform schedule cost 2 eps / 3 against the optimum 2 eps / 4.
    const double eps = 0.01;
    CHECK(predicted_tunneling(mp, uniform_schedule(), eps) == doctest::Approx(2 * eps / 3).epsilon(1e-9));
    CHECK(predicted_tunneling(mp, opt.schedule, eps) == doctest::Approx(2 * eps * 0.25).epsilon(1e-8));
}

TEST_CASE("quarter circle: constant mass, uniform optimum") {
    const MassProfile mp = mass_profile(bloch::quarter_circle(1.0), kGammaOne);
    const OptimalSchedule opt = tau_and_schedule(mp);
    CHECK(opt.tau == doctest::Approx(std::numbers::pi * std::numbers::pi / 32).epsilon(1e-10));
    for (double s : {0.1, 0.5, 0.8}) CHECK(std::abs(opt.schedule.q(s) - s) <= 1e-9);
}

TEST_CASE("optimal schedule has constant tunneling rate") {
    for (const BlochPath& bp : {bloch::dipped_arc(0.5), bloch::linear_xz()}) {
        const MassProfile mp = mass_profile(bp, [](double q) { return 0.5 + q; });
        const OptimalSchedule opt = tau_and_schedule(mp);
        std::vector<double> rate;
        for (int i = 0; i <= 1000; ++i) {
            const auto pt = opt.schedule.eval(i / 1000.0);
            rate.push_back(mp(pt.q) * pt.qdot * pt.qdot);
        }
        double mean = 0;
        for (double r : rate) mean += r;
        mean /= rate.size();
        double var = 0;
        for (double r : rate) var += (r - mean) * (r - mean);
        var /= rate.size();
        CHECK(mean == doctest::Approx(opt.tau).epsilon(1e-6));
        CHECK(var / (mean * mean) <= 1e-6);
        const double eps = 0.02;
        CHECK(std::abs(predicted_tunneling(mp, opt.schedule, eps) - 2 * eps * opt.tau) <= 1e-8 * 2 * eps * opt.tau + 1e-12);
    }
}

TEST_CASE("zero mass returns the uniform schedule with a flag") {
    const MassProfile mp = mass_profile(bloch::fixed_z(), kGammaOne);
    const OptimalSchedule opt = tau_and_schedule(mp);
    CHECK(opt.zero_mass);
    CHECK(opt.tau == 0.0);
    CHECK(opt.schedule.q(0.3) == 0.3);
    CHECK(predicted_tunneling(mp, uniform_schedule(), 0.1) == 0.0);
}

TEST_CASE("perturbed schedules cost more at first order") {
    const MassProfile mp = mass_profile(bloch::dipped_arc(0.5), kGammaOne);
    const OptimalSchedule opt = tau_and_schedule(mp);
    const double best = predicted_tunneling(mp, opt.schedule, 0.01);
    FixtureRng rng(2024);
    for (int i = 0; i < 10; ++i) {
        const double a = rng.uniform(0.3, 0.9);
        const double k = 1 + (i % 3);
        const Schedule base = opt.schedule;
        const Schedule pert = schedule_from_function([=](double s) {
            const double w = k * std::numbers::pi;
            const double phi = s + a * std::sin(w * s) / w;
            const double dphi = 1 + a * std::cos(w * s);
            const auto pt = base.eval(std::clamp(phi, 0.0, 1.0));
            return SchedulePoint{pt.q, pt.qdot * dphi};
        });
        const double cost = predicted_tunneling(mp, pert, 0.01);
        CHECK(cost > best);
        CHECK(cost == doctest::Approx(best * (1 + a * a / 2)).epsilon(1e-6));
    }
}

TEST_CASE("predicted tunneling curve is nondecreasing") {
    const MassProfile mp = mass_profile(bloch::dipped_arc(0.5), kGammaOne);
    std::vector<double> s;
    for (int i = 0; i <= 50; ++i) s.push_back(i / 50.0);
    const auto curve = predicted_tunneling_curve(mp, uniform_schedule(), 0.01, s);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].T >= curve[i - 1].T);
    CHECK(curve.back().T == doctest::Approx(predicted_tunneling(mp, uniform_schedule(), 0.01)).epsilon(1e-9));
}

TEST_CASE("measured tunneling of the maximally mixed state is one half") {
    Trajectory t;
    t.epsilon = 0.1;
    t.samples.push_back({0.0, 0.0, DensityMatrix::maximally_mixed(2)});
    t.samples.push_back({1.0, 1.0, DensityMatrix::maximally_mixed(2)});
    for (const auto& pt : measured_tunneling(t, bloch::quarter_circle().hamiltonian_path())) {
        CHECK(pt.T == doctest::Approx(0.5));
    }
}

TEST_CASE("measured tunneling tracks the prediction on the rotating path") {
    const BlochPath bp = bloch::quarter_circle(1.0);
    const HamiltonianPath p = bp.hamiltonian_path();
    const MassProfile mp = mass_profile(bp, kGammaOne);
    const double eps = 0.01;
    EvolveConfig cfg;
    cfg.samples = 11;
    const Trajectory t = evolve(p, uniform_schedule(), DephasingModel::scalar(1.0), eps,
                                DensityMatrix(spectral_frame(p.H(0)).P(0)), cfg);
    const auto T = measured_tunneling(t, p);
    CHECK(std::abs(T.front().T) <= 1e-14);
    const TunnelingReport rep = tunneling_report(predicted_tunneling(mp, uniform_schedule(), eps), T.back().T, eps,
                                                 tau_and_schedule(mp).tau);
    CHECK(rep.predicted >= 0.0);
    CHECK(rep.ratio_error <= 1.0);
    CHECK(rep.measured / rep.predicted == doctest::Approx(1.0).epsilon(0.02));
}
