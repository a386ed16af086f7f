#include "adpath/quadrature.hpp"

#include "adpath/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adpath {

namespace {

struct Integrator {
    const std::function<double(double)>& f;
    const QuadratureOptions& opts;
    double total_length;
    QuadratureResult& out;

    double eval(double x) {
        const double v = f(x);
        ++out.evaluations;
        if (!std::isfinite(v)) {
            throw Error(ErrorKind::QuadratureNotConverged, "integrand not finite at x = " + std::to_string(x));
        }
        return v;
    }

    void recurse(double a, double b, double fa, double fm, double fb, double whole, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = eval(lm), frm = eval(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double diff = left + right - whole;
        const double local_tol = opts.tol * (b - a) / total_length;
        if (std::abs(diff) <= 15.0 * local_tol) {
            const double v = left + right + diff / 15.0;
            out.value += v;
            out.error_estimate += std::abs(diff) / 15.0;
            if (opts.record_panels) out.panels.push_back({a, b, v});
            return;
        }
        if (depth >= opts.max_depth) {
            throw Error(ErrorKind::QuadratureNotConverged,
                        "max depth reached on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
        }
        recurse(a, m, fa, flm, fm, left, depth + 1);
        recurse(m, b, fm, frm, fb, right, depth + 1);
    }
};

} // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& opts, std::span<const double> breakpoints) {
    if (!(b > a)) throw Error(ErrorKind::InvalidArgument, "integration bounds must satisfy a < b");
    if (!(opts.tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");

    std::vector<double> cuts{a, b};
    for (double x : breakpoints) {
        if (x > a && x < b) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const std::size_t pieces = std::max<std::size_t>(1, opts.initial_panels);
    std::vector<double> edges;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        for (std::size_t k = 0; k < pieces; ++k) {
            edges.push_back(cuts[i] + (cuts[i + 1] - cuts[i]) * static_cast<double>(k) / static_cast<double>(pieces));
        }
    }
    edges.push_back(b);

    QuadratureResult out;
    Integrator integ{f, opts, b - a, out};
    double fa = integ.eval(edges.front());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        const double mid = 0.5 * (lo + hi);
        const double fm = integ.eval(mid);
        const double fb = integ.eval(hi);
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        integ.recurse(lo, hi, fa, fm, fb, whole, 0);
        fa = fb;
    }
    return out;
}

} // namespace adpath
