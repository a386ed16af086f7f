#include "adpath/interp.hpp"

#include "adpath/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace adpath {

namespace {

void validate(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorKind::DimensionMismatch, "interpolant needs >= 2 matching (x, y) nodes");
    }
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (!(x[i + 1] > x[i])) {
            throw Error(ErrorKind::NotMonotone, "nodes must be strictly increasing at index " + std::to_string(i));
        }
        if (!(y[i + 1] > y[i])) {
            throw Error(ErrorKind::NotMonotone, "values must be strictly increasing at index " + std::to_string(i));
        }
    }
}

struct Basis {
    double h00, h10, h01, h11;
};

} // namespace

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y, std::vector<double> d)
    : x_(std::move(x)), y_(std::move(y)), d_(std::move(d)) {}

MonotoneCubic MonotoneCubic::fritsch_carlson(std::vector<double> x, std::vector<double> y) {
    validate(x, y);
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n == 2) {
        d[0] = d[1] = (y[1] - y[0]) / (x[1] - x[0]);
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double h0 = x[i] - x[i - 1];
            const double h1 = x[i + 1] - x[i];
            const double s0 = (y[i] - y[i - 1]) / h0;
            const double s1 = (y[i + 1] - y[i]) / h1;
            d[i] = (h1 * s0 + h0 * s1) / (h0 + h1);
        }
        // one-sided three-point end slopes, clipped at zero
        const double h0 = x[1] - x[0], h1 = x[2] - x[1];
        const double s0 = (y[1] - y[0]) / h0, s1 = (y[2] - y[1]) / h1;
        d[0] = std::max(0.0, ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1));
        const double g0 = x[n - 1] - x[n - 2], g1 = x[n - 2] - x[n - 3];
        const double t0 = (y[n - 1] - y[n - 2]) / g0, t1 = (y[n - 2] - y[n - 3]) / g1;
        d[n - 1] = std::max(0.0, ((2.0 * g0 + g1) * t0 - g0 * t1) / (g0 + g1));
    }
    MonotoneCubic c(std::move(x), std::move(y), std::move(d));
    c.limit_slopes();
    return c;
}

MonotoneCubic MonotoneCubic::with_slopes(std::vector<double> x, std::vector<double> y,
                                         std::vector<double> slopes) {
    validate(x, y);
    if (slopes.size() != x.size()) {
        throw Error(ErrorKind::DimensionMismatch, "one slope per node required");
    }
    for (double& d : slopes) {
        if (!std::isfinite(d)) throw Error(ErrorKind::InvalidArgument, "slopes must be finite");
        d = std::max(d, 0.0);
    }
    MonotoneCubic c(std::move(x), std::move(y), std::move(slopes));
    c.limit_slopes();
    return c;
}

void MonotoneCubic::limit_slopes() {
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
        const double secant = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
        const double a = d_[i] / secant;
        const double b = d_[i + 1] / secant;
        const double r2 = a * a + b * b;
        if (r2 > 9.0) {
            const double t = 3.0 / std::sqrt(r2);
            d_[i] = t * a * secant;
            d_[i + 1] = t * b * secant;
        }
    }
}

std::size_t MonotoneCubic::interval(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const auto k = static_cast<std::size_t>(std::distance(x_.begin(), it));
    if (k == 0) return 0;
    return std::min(k - 1, x_.size() - 2);
}

double MonotoneCubic::value(double x) const {
    const std::size_t k = interval(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * y_[k] + (t3 - 2.0 * t2 + t) * h * d_[k] +
           (-2.0 * t3 + 3.0 * t2) * y_[k + 1] + (t3 - t2) * h * d_[k + 1];
}

double MonotoneCubic::derivative(double x) const {
    const std::size_t k = interval(x);
    const double h = x_[k + 1] - x_[k];
    const double t = (x - x_[k]) / h;
    const double t2 = t * t;
    return (6.0 * t2 - 6.0 * t) / h * y_[k] + (3.0 * t2 - 4.0 * t + 1.0) * d_[k] +
           (-6.0 * t2 + 6.0 * t) / h * y_[k + 1] + (3.0 * t2 - 2.0 * t) * d_[k + 1];
}

double MonotoneCubic::inverse(double y) const {
    if (y <= y_.front()) return x_.front();
    if (y >= y_.back()) return x_.back();
    const auto it = std::upper_bound(y_.begin(), y_.end(), y);
    const std::size_t k = std::min(static_cast<std::size_t>(std::distance(y_.begin(), it)) - 1, x_.size() - 2);
    if (y == y_[k]) return x_[k];
    // Safeguarded Newton on the monotone cubic piece.
    double lo = x_[k], hi = x_[k + 1];
    const double span = y_[k + 1] - y_[k];
    double x = lo + (hi - lo) * (y - y_[k]) / span;
    for (int iter = 0; iter < 100; ++iter) {
        const double f = value(x) - y;
        if (f > 0.0) hi = x; else lo = x;
        const double df = derivative(x);
        double next = (df > 0.0) ? x - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
            return next;
        }
        x = next;
    }
    return x;
}

} // namespace adpath
