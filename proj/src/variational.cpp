#include "adpath/variational.hpp"

#include "adpath/error.hpp"
#include "adpath/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace adpath {

double mass(const HamiltonianPath& path, const RateFn& gamma, double q) {
    const double g = gamma(q);
    if (!(g > 0.0)) throw Error(ErrorKind::NonPositiveRate, "gamma(q) <= 0 at q = " + std::to_string(q));
    const SpectralFrame frame = spectral_frame(path.H(q), kDefaultGapTol, q);
    const Matrix dP0 = projection_derivative(frame, path.dH(q), 0).matrix();
    const Matrix dP0sq = dP0 * dP0;
    double m = 0.0;
    for (Eigen::Index a = 1; a < frame.dim(); ++a) {
        const double de = frame.eigenvalues(0) - frame.eigenvalues(a);
        const double overlap = (frame.P(static_cast<std::size_t>(a)) * dP0sq).trace().real();
        m += g * overlap / (de * de + g * g);
    }
    return std::max(m, 0.0);
}

double mass_two_level(const BlochPath& bpath, const RateFn& gamma, double q) {
    const double g = gamma(q);
    if (!(g > 0.0)) throw Error(ErrorKind::NonPositiveRate, "gamma(q) <= 0 at q = " + std::to_string(q));
    const double gap = bpath.gap(q);
    if (!(gap > 0.0)) throw Error(ErrorKind::GapClosure, "|g(q)| = 0 at q = " + std::to_string(q));
    const double v = bpath.bloch_speed(q);
    return 0.25 * g * v * v / (gap * gap + g * g);
}

namespace {

MassProfile sample(std::function<double(double)> density, std::size_t grid_points, std::vector<double> breakpoints,
                   const RateFn* gamma) {
    if (grid_points < 2) throw Error(ErrorKind::InvalidArgument, "mass profile needs >= 2 grid points");
    MassProfile mp;
    mp.density = std::move(density);
    mp.breakpoints = std::move(breakpoints);
    mp.grid.resize(grid_points);
    mp.values.resize(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double q = static_cast<double>(i) / static_cast<double>(grid_points - 1);
        mp.grid[i] = q;
        mp.values[i] = mp.density(q);
        if (!(mp.values[i] >= 0.0)) {
            throw Error(ErrorKind::InvalidArgument, "mass must be nonnegative, got " + std::to_string(mp.values[i]));
        }
        if (gamma != nullptr) mp.gamma_used.push_back((*gamma)(q));
    }
    return mp;
}

} // namespace

MassProfile mass_profile(const HamiltonianPath& path, const RateFn& gamma, std::size_t grid_points,
                         std::vector<double> breakpoints) {
    return sample([path, gamma](double q) { return mass(path, gamma, q); }, grid_points, std::move(breakpoints),
                  &gamma);
}

MassProfile mass_profile(const BlochPath& bpath, const RateFn& gamma, std::size_t grid_points,
                         std::vector<double> breakpoints) {
    return sample([bpath, gamma](double q) { return mass_two_level(bpath, gamma, q); }, grid_points,
                  std::move(breakpoints), &gamma);
}

MassProfile mass_profile(std::function<double(double)> density, std::size_t grid_points,
                         std::vector<double> breakpoints) {
    return sample(std::move(density), grid_points, std::move(breakpoints), nullptr);
}

OptimalSchedule tau_and_schedule(const MassProfile& mp, const ScheduleOptions& opts) {
    const auto root_mass = [&mp](double q) { return std::sqrt(std::max(mp.density(q), 0.0)); };

    QuadratureOptions qo;
    qo.tol = opts.tol;
    qo.initial_panels = opts.initial_panels;
    qo.record_panels = true;
    const QuadratureResult quad = adaptive_simpson(root_mass, 0.0, 1.0, qo, mp.breakpoints);

    OptimalSchedule out;
    out.quadrature_error = quad.error_estimate;
    if (!(quad.value > 0.0)) {
        out.zero_mass = true;
        out.tau = 0.0;
        out.schedule = uniform_schedule();
        return out;
    }
    const double sqrt_tau = quad.value;
    out.tau = sqrt_tau * sqrt_tau;

    // Cumulative ∫₀^q √M on the accepted panel edges, then normalized to s(q).
    std::vector<double>& q = out.q_nodes;
    std::vector<double>& s = out.s_nodes;
    q.push_back(0.0);
    s.push_back(0.0);
    double acc = 0.0;
    for (const QuadraturePanel& p : quad.panels) {
        acc += p.value;
        q.push_back(p.b);
        s.push_back(acc / sqrt_tau);
    }
    q.back() = 1.0;
    s.back() = 1.0;
    // Drop panels whose integral vanished (M = 0 there); s must increase strictly.
    std::vector<double> qk{q.front()}, sk{s.front()};
    for (std::size_t i = 1; i < q.size(); ++i) {
        if (s[i] > sk.back()) {
            qk.push_back(q[i]);
            sk.push_back(s[i]);
        } else if (i + 1 == q.size()) {
            qk.back() = 1.0;
            sk.back() = 1.0;
        }
    }
    q = std::move(qk);
    s = std::move(sk);

    std::vector<double> slopes(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) slopes[i] = root_mass(q[i]) / sqrt_tau;
    out.schedule = schedule_from_inverse(MonotoneCubic::with_slopes(q, s, std::move(slopes)));
    return out;
}

namespace {

// M(q(s)) q̇(s)²; at an endpoint where q̇ diverges (M = 0 there) the value is
// taken just inside the interval, where the product is finite.
double rate_integrand(const MassProfile& mp, const Schedule& schedule, double s) {
    SchedulePoint p = schedule.eval(s);
    if (!std::isfinite(p.qdot)) {
        const double inside = s < 0.5 ? 1e-300 : 1.0 - 1e-16;
        p = schedule.eval(inside);
    }
    return mp.density(p.q) * p.qdot * p.qdot;
}

} // namespace

double predicted_tunneling(const MassProfile& mp, const Schedule& schedule, double epsilon, double tol) {
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    QuadratureOptions qo;
    qo.tol = tol;
    qo.initial_panels = 64;
    const auto f = [&](double s) { return rate_integrand(mp, schedule, s); };
    // Mass breakpoints live in q; pull them back to s so narrow features get panels.
    std::vector<double> s_breaks;
    for (double qb : mp.breakpoints) {
        if (!(qb > 0.0 && qb < 1.0)) continue;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (schedule.eval(mid).q < qb ? lo : hi) = mid;
        }
        s_breaks.push_back(0.5 * (lo + hi));
    }
    std::sort(s_breaks.begin(), s_breaks.end());
    s_breaks.erase(std::unique(s_breaks.begin(), s_breaks.end()), s_breaks.end());
    return 2.0 * epsilon * adaptive_simpson(f, 0.0, 1.0, qo, s_breaks).value;
}

std::vector<TunnelingPoint> predicted_tunneling_curve(const MassProfile& mp, const Schedule& schedule,
                                                      double epsilon, const std::vector<double>& s_values) {
    std::vector<TunnelingPoint> out;
    out.reserve(s_values.size());
    const auto f = [&](double s) { return rate_integrand(mp, schedule, s); };
    double prev = 0.0;
    double acc = 0.0;
    QuadratureOptions qo;
    qo.tol = 1e-12;
    for (double s : s_values) {
        if (s < prev) throw Error(ErrorKind::NotMonotone, "s values must be ascending");
        if (s > prev) acc += adaptive_simpson(f, prev, s, qo).value;
        out.push_back({s, 2.0 * epsilon * acc});
        prev = s;
    }
    return out;
}

std::vector<TunnelingPoint> measured_tunneling(const Trajectory& traj, const HamiltonianPath& path, double gap_tol) {
    std::vector<TunnelingPoint> out;
    out.reserve(traj.samples.size());
    for (const TrajectorySample& smp : traj.samples) {
        const SpectralFrame frame = spectral_frame(path.H(smp.q), gap_tol, smp.q);
        const double pop = (frame.P(0) * smp.rho.matrix()).trace().real();
        out.push_back({smp.s, 1.0 - pop});
    }
    return out;
}

TunnelingReport tunneling_report(double predicted, double measured, double epsilon, double tau) {
    TunnelingReport r;
    r.predicted = predicted;
    r.measured = measured;
    r.epsilon = epsilon;
    r.tau = tau;
    r.ratio_error = std::abs(measured - predicted) / (epsilon * epsilon);
    return r;
}

} // namespace adpath
