#include "adpath/zero_tunneling.hpp"

#include "adpath/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace adpath {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Piece {
    double s0, s1;
    double q;
};

// Constant pieces of the control in slow time, clipped to [0, 1]. An overrun
// on the last interval continues past s = 1 and is clipped here.
std::vector<Piece> pieces(const PiecewiseControl& c) {
    std::vector<Piece> out;
    for (const ControlSegment& seg : c.segments) {
        const double turn_end = std::min(seg.s_end, seg.s_begin + c.epsilon * seg.duration);
        if (turn_end > seg.s_begin) out.push_back({seg.s_begin, turn_end, seg.q_star});
        if (seg.s_end > turn_end) out.push_back({turn_end, seg.s_end, seg.q_plus});
    }
    return out;
}

double bisect(const BlochPath& bpath, const Vec3& chord, double lo, double hi, double tol) {
    double flo = bpath.direction(lo).dot(chord);
    double fhi = bpath.direction(hi).dot(chord);
    if (flo > 0.0 || fhi < 0.0) {
        throw Error(ErrorKind::NoIntersection, "no sign change of ĝ·(ĝ+ − ĝ−) on the interval");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bpath.direction(mid).dot(chord);
        if (fm == 0.0) return mid;
        if (fm < 0.0) lo = mid; else hi = mid;
    }
    // pick the end with smaller residual
    flo = std::abs(bpath.direction(lo).dot(chord));
    fhi = std::abs(bpath.direction(hi).dot(chord));
    return flo <= fhi ? lo : hi;
}

} // namespace

Vec3 rotate(const Vec3& v, const Vec3& axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return v * c + axis.cross(v) * s + axis * axis.dot(v) * (1.0 - c);
}

Vec3 ground_bloch_vector(const BlochPath& bpath, double q) { return -bpath.direction(q); }

double PiecewiseControl::total_fast_time() const {
    double t = 0.0;
    for (const auto& seg : segments) t += seg.duration + seg.hold;
    return t;
}

double PiecewiseControl::overrun() const {
    return std::max(0.0, total_fast_time() - 1.0 / epsilon);
}

double PiecewiseControl::q_at(double s) const {
    if (s <= 0.0) return 0.0;
    for (const Piece& p : pieces(*this)) {
        if (s <= p.s1) return p.q;
    }
    return 1.0;
}

PiecewiseControl construct(const BlochPath& bpath, const Schedule& base, double epsilon,
                           const ConstructOptions& opts) {
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidArgument, "epsilon must be positive");
    const double g0 = bpath.min_gap();
    if (!(g0 >= kGapClosureTol)) throw Error(ErrorKind::GapClosure, "path is not gapped");

    PiecewiseControl c;
    c.base = base;
    c.epsilon = epsilon;
    c.g0 = g0;
    c.interval_length = kTwoPi * epsilon / g0;
    c.offset = opts.offset;
    if (!(opts.offset >= 0.0 && opts.offset < c.interval_length)) {
        throw Error(ErrorKind::InvalidArgument, "offset must lie in [0, 2*pi*eps/g0)");
    }
    if (epsilon > g0 / 10.0) {
        std::ostringstream os;
        os << "epsilon/g0 = " << epsilon / g0 << " is not small";
        c.warnings.push_back(os.str());
    }

    std::vector<double> edges{0.0};
    for (double s = opts.offset; s < 1.0; s += c.interval_length) {
        if (s > edges.back()) edges.push_back(s);
    }
    edges.push_back(1.0);

    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        ControlSegment seg;
        seg.s_begin = edges[i];
        seg.s_end = edges[i + 1];
        seg.q_minus = base.q(seg.s_begin);
        seg.q_plus = base.q(seg.s_end);
        const double window = (seg.s_end - seg.s_begin) / epsilon;

        const Vec3 um = bpath.direction(seg.q_minus);
        const Vec3 up = bpath.direction(seg.q_plus);
        const Vec3 chord = up - um;
        if (chord.norm() < 1e-14) {
            seg.skipped = true;
            seg.q_star = seg.q_plus;
            seg.axis = up;
            seg.hold = window;
            c.segments.push_back(seg);
            continue;
        }
        seg.q_star = bisect(bpath, chord, seg.q_minus, seg.q_plus, opts.bisection_tol);
        seg.axis = bpath.direction(seg.q_star);

        // oriented angle between the components of ĝ∓ perpendicular to the axis
        const Vec3 a = um - seg.axis * seg.axis.dot(um);
        const Vec3 b = up - seg.axis * seg.axis.dot(up);
        double phi = std::atan2(seg.axis.dot(a.cross(b)), a.dot(b));
        if (phi < 0.0) phi += kTwoPi;
        if (phi >= kTwoPi) phi -= kTwoPi;
        seg.angle = phi;
        seg.duration = phi / bpath.gap(seg.q_star);
        seg.hold = std::max(0.0, window - seg.duration);
        c.segments.push_back(seg);
    }
    if (c.overrun() > 0.0) {
        std::ostringstream os;
        os << "short final interval: rotation overruns total time by " << c.overrun();
        c.warnings.push_back(os.str());
    }
    return c;
}

double verify(const PiecewiseControl& control, const BlochPath& bpath, InitialLevel level) {
    const double sign = level == InitialLevel::Ground ? -1.0 : 1.0;
    Vec3 r = sign * bpath.direction(0.0);
    for (const ControlSegment& seg : control.segments) {
        if (!seg.skipped) r = rotate(r, seg.axis, seg.duration * bpath.gap(seg.q_star));
        // resting at q_+: precession about ĝ(q_+), which fixes ±ĝ(q_+)
        r = rotate(r, bpath.direction(seg.q_plus), seg.hold * bpath.gap(seg.q_plus));
    }
    const Vec3 target = sign * bpath.direction(1.0);
    return 0.5 * (1.0 + r.dot(target));
}

DeviationReport deviation(const PiecewiseControl& control, int speed_samples) {
    DeviationReport rep;
    for (int i = 0; i < speed_samples; ++i) {
        const double s = static_cast<double>(i) / (speed_samples - 1);
        rep.sup_speed = std::max(rep.sup_speed, std::abs(control.base.qdot(s)));
    }
    rep.bound = rep.sup_speed * control.interval_length;
    for (const Piece& p : pieces(control)) {
        rep.actual = std::max({rep.actual, std::abs(p.q - control.base.q(p.s0)), std::abs(p.q - control.base.q(p.s1))});
    }
    return rep;
}

} // namespace adpath
