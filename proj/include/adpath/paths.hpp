// paths.hpp: Hamiltonian paths q ↦ H(q), two-level Bloch paths and their schedules q(s)

#pragma once

#include "adpath/interp.hpp"
#include "adpath/types.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace adpath {

enum class PathVariant { Linear, Bloch, Grover, Custom };

std::string_view to_string(PathVariant v) noexcept;

// Smooth path of Hermitian operators on q ∈ [0, 1] together with its exact
// derivative. Copies share the underlying callables.
class HamiltonianPath {
public:
    using MatrixFn = std::function<Matrix(double)>;

    HamiltonianPath(Eigen::Index dim, MatrixFn h, MatrixFn dh, PathVariant variant = PathVariant::Custom);

    Eigen::Index dim() const noexcept { return dim_; }
    PathVariant variant() const noexcept { return variant_; }

    HermitianOperator H(double q) const;
    HermitianOperator dH(double q) const;

    // Largest entrywise mismatch between dH and a central difference of H at
    // `points` uniform q samples (step `step`). Used for the consistency check.
    double derivative_defect(int points = 11, double step = 1e-6) const;

private:
    Eigen::Index dim_;
    MatrixFn h_, dh_;
    PathVariant variant_;
};

// H(q) = (1 - q) H0 + q H1.
HamiltonianPath linear_path(const HermitianOperator& H0, const HermitianOperator& H1);

// Two-level path 2H(q) = g(q)·σ. Gap |g(q)|, Bloch direction ĝ(q).
class BlochPath {
public:
    using VectorFn = std::function<Vec3(double)>;

    Vec3 field(double q) const { return g_(q); }
    Vec3 field_derivative(double q) const { return dg_(q); }
    double gap(double q) const { return g_(q).norm(); }
    Vec3 direction(double q) const;
    // dĝ/dq = (g' − ĝ(ĝ·g'))/|g|
    Vec3 direction_derivative(double q) const;
    double bloch_speed(double q) const { return direction_derivative(q).norm(); }

    double min_gap() const noexcept { return g0_; }
    double argmin_gap() const noexcept { return q_g0_; }

    HamiltonianPath hamiltonian_path(PathVariant tag = PathVariant::Bloch) const;

private:
    friend BlochPath bloch_path(VectorFn g, VectorFn dg);
    BlochPath(VectorFn g, VectorFn dg) : g_(std::move(g)), dg_(std::move(dg)) {}

    VectorFn g_, dg_;
    double g0_ = 0.0;
    double q_g0_ = 0.0;
};

inline constexpr double kGapClosureTol = 1e-8;

// Computes g_0 by a 1001-point grid search refined with golden-section search.
// Throws Error(GapClosure) if the grid minimum of |g| is below kGapClosureTol.
BlochPath bloch_path(BlochPath::VectorFn g, BlochPath::VectorFn dg);

// Named Bloch families used by tests and the CLI.
namespace bloch {
// g(q) = gap·(sin(πq/2), 0, cos(πq/2)): quarter great circle, |ĝ'| = π/2.
BlochPath quarter_circle(double gap = 1.0);
// g(q) = radius·(sin(angle·q), 0, cos(angle·q)).
BlochPath rotating(double angle = 1.0, double radius = 1.0);
// g(q) = (0, 0, 1 + q): fixed direction, P'_0 = 0.
BlochPath fixed_z();
// g(q) = (q, 0, 1 − q): g_0 = 1/√2 at q = 1/2.
BlochPath linear_xz();
// Quarter circle whose radius dips to (1 − depth) at q = 1/2:
// g(q) = (1 − depth·sin(πq))·(sin(πq/2), 0, cos(πq/2)). Non-constant mass.
BlochPath dipped_arc(double depth = 0.5);
} // namespace bloch

struct SchedulePoint {
    double q;
    double qdot;
};

// Monotone time-table s ∈ [0, 1] ↦ q(s) ∈ [0, 1] with q(0) = 0, q(1) = 1.
class Schedule {
public:
    enum class Kind { Uniform, Grid, Inverse, Custom };
    using Fn = std::function<SchedulePoint(double)>;

    Kind kind() const noexcept { return kind_; }
    SchedulePoint eval(double s) const;
    double q(double s) const { return eval(s).q; }
    double qdot(double s) const { return eval(s).qdot; }

    // Interpolation nodes for Grid (s_i, q_i) and Inverse (q_i, s_i); empty otherwise.
    const MonotoneCubic* interpolant() const noexcept { return interp_.get(); }

    friend Schedule uniform_schedule();
    friend Schedule schedule_from_grid(std::span<const double> q_values);
    friend Schedule schedule_from_inverse(MonotoneCubic s_of_q);
    friend Schedule schedule_from_function(Fn fn, int check_points);

private:
    Kind kind_ = Kind::Uniform;
    std::shared_ptr<const MonotoneCubic> interp_;
    Fn fn_;
};

Schedule uniform_schedule();
// q_values on the uniform grid s_i = i/(n−1); strictly increasing from 0 to 1.
// Throws Error(NotMonotone) otherwise.
Schedule schedule_from_grid(std::span<const double> q_values);
// Schedule given through its inverse s(q) (monotone from (0, 0) to (1, 1));
// q(s) is recovered by solving the cubic pieces.
Schedule schedule_from_inverse(MonotoneCubic s_of_q);
// Arbitrary callable; endpoints and strict monotonicity (q̇ > 0) are checked
// on check_points uniform samples.
Schedule schedule_from_function(Schedule::Fn fn, int check_points = 1001);

} // namespace adpath
