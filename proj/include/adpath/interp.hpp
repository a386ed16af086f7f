// interp.hpp: Monotone piecewise-cubic Hermite interpolation

#pragma once

#include <span>
#include <vector>

namespace adpath {

// Cubic Hermite interpolant through strictly increasing (x_i, y_i) with
// strictly increasing y. Slopes are limited (Fritsch–Carlson) so the
// interpolant is monotone and its derivative continuous.
class MonotoneCubic {
public:
    MonotoneCubic() = default;

    // Slopes from the three-point formula (exact on quadratics), then limited.
    static MonotoneCubic fritsch_carlson(std::vector<double> x, std::vector<double> y);
    // Caller-supplied slopes (e.g. exact derivatives); limited only where they
    // would break monotonicity.
    static MonotoneCubic with_slopes(std::vector<double> x, std::vector<double> y,
                                     std::vector<double> slopes);

    double value(double x) const;
    double derivative(double x) const;
    // Solves value(x) = y for x; y outside [y_0, y_n] is clamped.
    double inverse(double y) const;

    std::span<const double> nodes() const noexcept { return x_; }
    std::span<const double> values() const noexcept { return y_; }
    std::span<const double> slopes() const noexcept { return d_; }

private:
    MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> d);
    std::size_t interval(double x) const;
    void limit_slopes();

    std::vector<double> x_, y_, d_;
};

} // namespace adpath
