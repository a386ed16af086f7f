// variational.hpp: Mass functional M(q) and the tunneling-optimal schedule it induces
//
// For the dephasing generator with scalar rate γ(q), the tunneling out of the
// instantaneous ground state is, to first order in ε,
//     T(1) = 2ε ∫₀¹ M(q(s)) q̇(s)² ds,
//     M(q) = Σ_{a≠0} γ tr(P_a P'_0²) / ((e_0 − e_a)² + γ²).
// The minimizer over monotone schedules keeps M q̇² = τ constant, with
// √τ = ∫₀¹ √M dq, and reaches T = 2ετ.

#pragma once

#include "adpath/lindblad.hpp"
#include "adpath/paths.hpp"
#include "adpath/quadrature.hpp"

#include <functional>
#include <vector>

namespace adpath {

using RateFn = std::function<double(double)>;

// Throws Error(DegenerateSpectrum) / Error(NonPositiveRate).
double mass(const HamiltonianPath& path, const RateFn& gamma, double q);
// M = (γ/4)|ĝ'|²/(g² + γ²). Throws Error(GapClosure) if |g(q)| = 0.
double mass_two_level(const BlochPath& bpath, const RateFn& gamma, double q);

// M(q) as a callable plus a sampled table for output. `breakpoints` mark narrow
// features (e.g. a small gap) that quadratures must resolve.
struct MassProfile {
    std::function<double(double)> density;
    std::vector<double> breakpoints;
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> gamma_used;  // empty for synthetic profiles

    double operator()(double q) const { return density(q); }
};

MassProfile mass_profile(const HamiltonianPath& path, const RateFn& gamma, std::size_t grid_points = 1001,
                         std::vector<double> breakpoints = {});
MassProfile mass_profile(const BlochPath& bpath, const RateFn& gamma, std::size_t grid_points = 1001,
                         std::vector<double> breakpoints = {});
MassProfile mass_profile(std::function<double(double)> density, std::size_t grid_points = 1001,
                         std::vector<double> breakpoints = {});

struct OptimalSchedule {
    double tau = 0.0;
    Schedule schedule;
    bool zero_mass = false;        // M ≡ 0: every schedule is optimal at first order
    double quadrature_error = 0.0;
    std::vector<double> q_nodes;   // nodes of the inverse map s(q)
    std::vector<double> s_nodes;
};

struct ScheduleOptions {
    double tol = 1e-10;
    std::size_t initial_panels = 256;
};

// Builds s(q) = τ^{-1/2} ∫₀^q √M and the schedule q(s) from it.
OptimalSchedule tau_and_schedule(const MassProfile& mp, const ScheduleOptions& opts = {});

// 2ε ∫₀¹ M(q(s)) q̇(s)² ds.
double predicted_tunneling(const MassProfile& mp, const Schedule& schedule, double epsilon, double tol = 1e-10);

struct TunnelingPoint {
    double s;
    double T;
};

// First-order T(s) = 2ε ∫₀^s M q̇² at the requested s values (ascending).
std::vector<TunnelingPoint> predicted_tunneling_curve(const MassProfile& mp, const Schedule& schedule,
                                                      double epsilon, const std::vector<double>& s_values);

// T(s) = 1 − tr(P_0(q(s)) ρ(s)) at every trajectory sample.
std::vector<TunnelingPoint> measured_tunneling(const Trajectory& traj, const HamiltonianPath& path,
                                               double gap_tol = kDefaultGapTol);

struct TunnelingReport {
    double predicted = 0.0;
    double measured = 0.0;
    double epsilon = 0.0;
    double tau = 0.0;
    double ratio_error = 0.0;  // |measured − predicted| / ε²
};

TunnelingReport tunneling_report(double predicted, double measured, double epsilon, double tau);

} // namespace adpath
