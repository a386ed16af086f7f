#include "adpath/error.hpp"
#include "adpath/interp.hpp"
#include "adpath/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace adpath;

TEST_CASE("monotone cubic interpolates nodes and stays monotone") {
    const std::vector<double> x{0.0, 0.1, 0.2, 0.5, 1.0};
    const std::vector<double> y{0.0, 0.0001, 0.5, 0.51, 1.0};
    const MonotoneCubic c = MonotoneCubic::fritsch_carlson(x, y);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(c.value(x[i]) == doctest::Approx(y[i]));
    double prev = -1.0;
    for (int i = 0; i <= 2000; ++i) {
        const double v = c.value(i / 2000.0);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("monotone cubic inverse") {
    std::vector<double> x, y;
    for (int i = 0; i <= 50; ++i) {
        x.push_back(i / 50.0);
        y.push_back(std::pow(i / 50.0, 3) + 0.1 * (i / 50.0));
    }
    const MonotoneCubic c = MonotoneCubic::fritsch_carlson(x, y);
    for (double t : {0.0, 0.013, 0.3, 0.77, 1.1}) CHECK(c.value(c.inverse(t)) == doctest::Approx(t).epsilon(1e-12));
}

TEST_CASE("exact slopes give cubic Hermite accuracy") {
    std::vector<double> x, y, d;
    for (int i = 0; i <= 20; ++i) {
        const double t = i / 20.0;
        x.push_back(t);
        y.push_back(std::sin(t));
        d.push_back(std::cos(t));
    }
    const MonotoneCubic c = MonotoneCubic::with_slopes(x, y, d);
    CHECK(std::abs(c.value(0.333) - std::sin(0.333)) <= 1e-8);
    CHECK(std::abs(c.derivative(0.333) - std::cos(0.333)) <= 1e-5);
}

TEST_CASE("non-increasing nodes are rejected") {
    CHECK_THROWS_AS(MonotoneCubic::fritsch_carlson({0.0, 0.0, 1.0}, {0.0, 0.5, 1.0}), Error);
    CHECK_THROWS_AS(MonotoneCubic::fritsch_carlson({0.0, 0.5, 1.0}, {0.0, 0.6, 0.5}), Error);
}

TEST_CASE("adaptive Simpson on smooth and peaked integrands") {
    CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    // Lorentzian of width 1e-4 centred at 0.5: unresolvable without the breakpoint hint.
    const double w = 1e-4;
    const auto f = [w](double x) { return w / ((x - 0.5) * (x - 0.5) + w * w); };
    const double exact = 2.0 * std::atan(0.5 / w);
    const std::vector<double> bp{0.5 - 4 * w, 0.5, 0.5 + 4 * w};
    CHECK(adaptive_simpson(f, 0.0, 1.0, {}, bp).value == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("quadrature reports failure on non-finite integrands") {
    CHECK_THROWS_AS(adaptive_simpson([](double x) { return 1.0 / (x - 0.5); }, 0.0, 1.0), Error);
    CHECK_THROWS_AS(adaptive_simpson([](double) { return std::nan(""); }, 0.0, 1.0), Error);
}
