// grover.hpp: Adiabatic Grover search reduced to two levels, and how the
// optimal-tunneling time scale τ(N, γ) grows with N

#pragma once

#include "adpath/paths.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace adpath::grover {

// g(q)² = 4(1 − q)q/N + (1 − 2q)².
double gap(double N, double q);
// |ĝ'(q)| = √(1/N − 1/N²) · 2/g(q)².
double bloch_speed(double N, double q);

// Two-level reduction of H(q) = (1 − q)(I − |ψ⟩⟨ψ|) + q(I − |m⟩⟨m|) in the
// basis {|m⟩, |m⊥⟩} with |ψ⟩ = N^{-1/2}|m⟩ + √(1 − 1/N)|m⊥⟩. The identity part is
// dropped: g(q) = −(1 − q) n_ψ − q ẑ with n_ψ the Bloch vector of |ψ⟩.
BlochPath path(double N);

struct GammaRule {
    enum class Kind { ProportionalToG0, Fixed, PowerLaw };
    Kind kind = Kind::ProportionalToG0;
    double value = 1.0;  // c for γ = c·g_0, γ itself, or α for γ = N^{−α/2}

    static GammaRule proportional_to_g0(double c) { return {Kind::ProportionalToG0, c}; }
    static GammaRule fixed(double gamma) { return {Kind::Fixed, gamma}; }
    static GammaRule power_law(double alpha) { return {Kind::PowerLaw, alpha}; }

    double gamma(double N) const;
    std::string describe() const;
};

// Minimal gap g_0 = g(1/2) = 1/√N.
double min_gap(double N);

// M(q) for the search path with constant γ.
double mass(double N, double gamma, double q);

// Quadrature break points around q = 1/2 at multiples of the feature width 1/√N.
std::vector<double> breakpoints(double N);

// τ = (∫₀¹ √M dq)². Throws Error(QuadratureNotConverged).
double tau(double N, const GammaRule& rule, double tol = 1e-10);
double tau_for_gamma(double N, double gamma, double tol = 1e-10);

struct LogLogFit {
    double slope = 0.0;
    double slope_stderr = 0.0;
    double intercept = 0.0;
};

// Least squares of log y against log x.
LogLogFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingRow {
    std::uint64_t N;
    double gamma;
    double tau;
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    LogLogFit fit;
    std::uint64_t fit_first_N = 0;
    std::uint64_t fit_last_N = 0;
};

// τ for each N (ascending, at least 4 entries); the log-log slope is fitted
// after dropping the `exclude_smallest` smallest N. Cells run on `threads`
// worker threads; results do not depend on the thread count.
ScalingResult scaling_experiment(const std::vector<std::uint64_t>& N_list, const GammaRule& rule,
                                 std::size_t exclude_smallest = 2, std::size_t threads = 1);

} // namespace adpath::grover
