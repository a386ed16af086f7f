// zero_tunneling.hpp: Piecewise-constant two-level controls with exactly zero tunneling
//
// Slow time is cut into intervals of length Δs = 2πε/g_0. On each interval
// with end points q_− = q(s_i), q_+ = q(s_{i+1}) of a base schedule, the
// Hamiltonian is frozen at a point q* where ĝ(q*) ⟂ (ĝ(q_+) − ĝ(q_−)). Both
// end directions then have the same component along ĝ(q*), so a precession
// about ĝ(q*) by a suitable angle φ carries ĝ(q_−) onto ĝ(q_+). It takes fast
// time φ/|g(q*)| ≤ 2π/g_0, after which the control rests at q_+ where the
// state is stationary.

#pragma once

#include "adpath/paths.hpp"

#include <vector>

namespace adpath {

struct ControlSegment {
    double s_begin = 0.0;
    double s_end = 0.0;
    double q_minus = 0.0;
    double q_plus = 0.0;
    double q_star = 0.0;
    Vec3 axis = Vec3::Zero();  // ĝ(q*)
    double angle = 0.0;        // precession angle φ ∈ [0, 2π)
    double duration = 0.0;     // fast time at q*, φ/|g(q*)|
    double hold = 0.0;         // fast time resting at q_+ afterwards
    bool skipped = false;      // ĝ(q_+) = ĝ(q_−): nothing to rotate
};

struct PiecewiseControl {
    std::vector<ControlSegment> segments;
    Schedule base;
    double epsilon = 0.0;
    double interval_length = 0.0;  // Δs = 2πε/g_0
    double offset = 0.0;           // start of the first full interval
    double g0 = 0.0;
    std::vector<std::string> warnings;

    // Σ (duration + hold); equals 1/ε unless a short last interval overran.
    double total_fast_time() const;
    // Fast time beyond 1/ε spent finishing rotations on short intervals.
    double overrun() const;
    // Control value q_c(s) on [0, 1]; q* while rotating, q_+ while resting.
    double q_at(double s) const;
};

struct ConstructOptions {
    double offset = 0.0;        // in [0, Δs); shifts the partition (the free family parameter)
    double bisection_tol = 1e-12;
};

// Throws Error(GapClosure) for ungapped paths, Error(InvalidArgument) for a bad
// offset or ε.
PiecewiseControl construct(const BlochPath& bpath, const Schedule& base, double epsilon,
                           const ConstructOptions& opts = {});

// Rotates v about the unit axis by angle (right-handed).
Vec3 rotate(const Vec3& v, const Vec3& axis, double angle);

enum class InitialLevel { Ground, Excited };

// Propagates the initial eigenstate's Bloch vector through the exact segment
// rotations and returns its overlap tr(P(1) ρ) with the matching eigenstate
// at q = 1. Equals 1 − T.
double verify(const PiecewiseControl& control, const BlochPath& bpath, InitialLevel level = InitialLevel::Ground);

// Bloch vectors of ρ = (I + r·σ)/2 for the ground (−ĝ) and excited (+ĝ) states.
Vec3 ground_bloch_vector(const BlochPath& bpath, double q);

struct DeviationReport {
    double bound = 0.0;      // sup|q̇_base| · Δs
    double actual = 0.0;     // sup_s |q_c(s) − q_base(s)|
    double sup_speed = 0.0;
};

// `actual` is exact for monotone bases: on each constant piece of the control
// the largest distance is attained at a piece end point.
DeviationReport deviation(const PiecewiseControl& control, int speed_samples = 10001);

} // namespace adpath
