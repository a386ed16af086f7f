#include "adpath/paths.hpp"

#include "adpath/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace adpath {

std::string_view to_string(PathVariant v) noexcept {
    switch (v) {
    case PathVariant::Linear: return "linear";
    case PathVariant::Bloch: return "bloch";
    case PathVariant::Grover: return "grover";
    case PathVariant::Custom: return "custom";
    }
    return "unknown";
}

// ------------------------------- HamiltonianPath -----------------------------

HamiltonianPath::HamiltonianPath(Eigen::Index dim, MatrixFn h, MatrixFn dh, PathVariant variant)
    : dim_(dim), h_(std::move(h)), dh_(std::move(dh)), variant_(variant) {
    if (dim <= 0) throw Error(ErrorKind::DimensionMismatch, "path dimension must be positive");
    if (!h_ || !dh_) throw Error(ErrorKind::InvalidArgument, "path needs both H and dH");
}

HermitianOperator HamiltonianPath::H(double q) const {
    Matrix m = h_(q);
    if (m.rows() != dim_ || m.cols() != dim_) throw Error(ErrorKind::DimensionMismatch, "H(q) has wrong size");
    return HermitianOperator(std::move(m));
}

HermitianOperator HamiltonianPath::dH(double q) const {
    Matrix m = dh_(q);
    if (m.rows() != dim_ || m.cols() != dim_) throw Error(ErrorKind::DimensionMismatch, "dH(q) has wrong size");
    return HermitianOperator(std::move(m));
}

double HamiltonianPath::derivative_defect(int points, double step) const {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double q = points == 1 ? 0.5 : static_cast<double>(i) / (points - 1);
        const Matrix fd = (h_(q + step) - h_(q - step)) / (2.0 * step);
        worst = std::max(worst, (fd - dh_(q)).cwiseAbs().maxCoeff());
    }
    return worst;
}

HamiltonianPath linear_path(const HermitianOperator& H0, const HermitianOperator& H1) {
    if (H0.dim() != H1.dim()) throw Error(ErrorKind::DimensionMismatch, "H0 and H1 differ in dimension");
    Matrix a = H0.matrix();
    Matrix b = H1.matrix();
    Matrix diff = b - a;
    return HamiltonianPath(
        a.rows(),
        [a, b](double q) -> Matrix { return (1.0 - q) * a + q * b; },
        [diff](double) -> Matrix { return diff; },
        PathVariant::Linear);
}

// --------------------------------- BlochPath ---------------------------------

Vec3 BlochPath::direction(double q) const {
    const Vec3 g = g_(q);
    const double n = g.norm();
    if (!(n > 0.0)) throw Error(ErrorKind::GapClosure, "|g(q)| = 0 at q = " + std::to_string(q));
    return g / n;
}

Vec3 BlochPath::direction_derivative(double q) const {
    const Vec3 g = g_(q);
    const double n = g.norm();
    if (!(n > 0.0)) throw Error(ErrorKind::GapClosure, "|g(q)| = 0 at q = " + std::to_string(q));
    const Vec3 u = g / n;
    const Vec3 dg = dg_(q);
    return (dg - u * u.dot(dg)) / n;
}

HamiltonianPath BlochPath::hamiltonian_path(PathVariant tag) const {
    auto g = g_;
    auto dg = dg_;
    return HamiltonianPath(
        2,
        [g](double q) -> Matrix { return 0.5 * pauli::dot(g(q)); },
        [dg](double q) -> Matrix { return 0.5 * pauli::dot(dg(q)); },
        tag);
}

BlochPath bloch_path(BlochPath::VectorFn g, BlochPath::VectorFn dg) {
    if (!g || !dg) throw Error(ErrorKind::InvalidArgument, "Bloch path needs g and dg");
    BlochPath path(std::move(g), std::move(dg));

    constexpr int kGrid = 1001;
    int best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kGrid; ++i) {
        const double q = static_cast<double>(i) / (kGrid - 1);
        const double gap = path.gap(q);
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    if (!(best_gap >= kGapClosureTol)) {
        throw Error(ErrorKind::GapClosure, "min |g| on grid = " + std::to_string(best_gap));
    }

    // golden-section refinement on the bracketing grid cells
    const double h = 1.0 / (kGrid - 1);
    double lo = std::max(0.0, (best - 1) * h);
    double hi = std::min(1.0, (best + 1) * h);
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = path.gap(c), fd = path.gap(d);
    while (hi - lo > 1e-12) {
        if (fc < fd) {
            hi = d; d = c; fd = fc;
            c = hi - invphi * (hi - lo);
            fc = path.gap(c);
        } else {
            lo = c; c = d; fc = fd;
            d = lo + invphi * (hi - lo);
            fd = path.gap(d);
        }
    }
    const double q_ref = 0.5 * (lo + hi);
    const double gap_ref = path.gap(q_ref);
    if (gap_ref < best_gap) {
        path.g0_ = gap_ref;
        path.q_g0_ = q_ref;
    } else {
        path.g0_ = best_gap;
        path.q_g0_ = best * h;
    }
    return path;
}

namespace bloch {

BlochPath quarter_circle(double gap) {
    return rotating(std::numbers::pi / 2.0, gap);
}

BlochPath rotating(double angle, double radius) {
    return bloch_path(
        [=](double q) { return Vec3(radius * std::sin(angle * q), 0.0, radius * std::cos(angle * q)); },
        [=](double q) { return Vec3(radius * angle * std::cos(angle * q), 0.0, -radius * angle * std::sin(angle * q)); });
}

BlochPath fixed_z() {
    return bloch_path([](double q) { return Vec3(0.0, 0.0, 1.0 + q); },
                      [](double) { return Vec3(0.0, 0.0, 1.0); });
}

BlochPath linear_xz() {
    return bloch_path([](double q) { return Vec3(q, 0.0, 1.0 - q); },
                      [](double) { return Vec3(1.0, 0.0, -1.0); });
}

BlochPath dipped_arc(double depth) {
    using std::numbers::pi;
    return bloch_path(
        [=](double q) {
            const double r = 1.0 - depth * std::sin(pi * q);
            return Vec3(r * std::sin(pi * q / 2.0), 0.0, r * std::cos(pi * q / 2.0));
        },
        [=](double q) {
            const double r = 1.0 - depth * std::sin(pi * q);
            const double dr = -depth * pi * std::cos(pi * q);
            return Vec3(dr * std::sin(pi * q / 2.0) + r * (pi / 2.0) * std::cos(pi * q / 2.0), 0.0,
                        dr * std::cos(pi * q / 2.0) - r * (pi / 2.0) * std::sin(pi * q / 2.0));
        });
}

} // namespace bloch

// --------------------------------- Schedule ----------------------------------

SchedulePoint Schedule::eval(double s) const {
    switch (kind_) {
    case Kind::Uniform:
        return {s, 1.0};
    case Kind::Grid:
        return {interp_->value(s), interp_->derivative(s)};
    case Kind::Inverse: {
        const double q = interp_->inverse(s);
        const double ds_dq = interp_->derivative(q);
        return {q, ds_dq > 0.0 ? 1.0 / ds_dq : std::numeric_limits<double>::infinity()};
    }
    case Kind::Custom:
        return fn_(s);
    }
    return {s, 1.0};
}

Schedule uniform_schedule() { return Schedule{}; }

Schedule schedule_from_grid(std::span<const double> q_values) {
    const std::size_t n = q_values.size();
    if (n < 2) throw Error(ErrorKind::NotMonotone, "schedule grid needs at least two nodes");
    if (q_values.front() != 0.0 || q_values.back() != 1.0) {
        throw Error(ErrorKind::NotMonotone, "schedule grid must start at 0 and end at 1");
    }
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    s.back() = 1.0;
    Schedule out;
    out.kind_ = Schedule::Kind::Grid;
    out.interp_ = std::make_shared<const MonotoneCubic>(
        MonotoneCubic::fritsch_carlson(std::move(s), std::vector<double>(q_values.begin(), q_values.end())));
    return out;
}

Schedule schedule_from_inverse(MonotoneCubic s_of_q) {
    const auto x = s_of_q.nodes();
    const auto y = s_of_q.values();
    if (x.front() != 0.0 || x.back() != 1.0 || y.front() != 0.0 || y.back() != 1.0) {
        throw Error(ErrorKind::NotMonotone, "inverse schedule must map 0 to 0 and 1 to 1");
    }
    Schedule out;
    out.kind_ = Schedule::Kind::Inverse;
    out.interp_ = std::make_shared<const MonotoneCubic>(std::move(s_of_q));
    return out;
}

Schedule schedule_from_function(Schedule::Fn fn, int check_points) {
    if (!fn) throw Error(ErrorKind::InvalidArgument, "empty schedule function");
    if (fn(0.0).q != 0.0 || fn(1.0).q != 1.0) {
        throw Error(ErrorKind::NotMonotone, "schedule must satisfy q(0) = 0 and q(1) = 1");
    }
    double prev = -1.0;
    for (int i = 0; i < check_points; ++i) {
        const double s = static_cast<double>(i) / (check_points - 1);
        const SchedulePoint p = fn(s);
        if (!(p.qdot > 0.0) || !(p.q > prev)) {
            throw Error(ErrorKind::NotMonotone, "schedule not strictly increasing near s = " + std::to_string(s));
        }
        prev = p.q;
    }
    Schedule out;
    out.kind_ = Schedule::Kind::Custom;
    out.fn_ = std::move(fn);
    return out;
}

} // namespace adpath
