// quadrature.hpp: Adaptive Simpson integration with caller-supplied breakpoints

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace adpath {

struct QuadratureOptions {
    double tol = 1e-10;           // absolute, distributed over [a, b] by panel length
    int max_depth = 60;
    std::size_t initial_panels = 1;
    bool record_panels = false;
};

struct QuadraturePanel {
    double a, b;
    double value;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // sum of |S2 - S1| / 15 over accepted panels
    std::size_t evaluations = 0;
    std::vector<QuadraturePanel> panels;  // ordered, only if record_panels
};

// Integrates f over [a, b]. The interval is first cut at every breakpoint
// strictly inside (a, b) and then into initial_panels equal pieces, so narrow
// features the caller knows about are never stepped over.
// Throws Error(QuadratureNotConverged) if a panel needs more than max_depth
// bisections or f returns a non-finite value.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  const QuadratureOptions& opts = {},
                                  std::span<const double> breakpoints = {});

} // namespace adpath
