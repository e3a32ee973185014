#include "twocenter/lift.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace twocenter {

namespace {

using Cmplx = std::complex<double>;

Cmplx to_c(Vec2 v) { return {v.x, v.y}; }
Vec2 to_v(Cmplx z) { return {z.real(), z.imag()}; }

/// Base-curve samples prepared for lifting: positions (already translated)
/// plus a flag for samples pinned exactly at a branch point.
struct BasePoint {
    Vec2 w;
    bool at_branch = false;
};

double dist_to_branch(Vec2 w, const std::vector<Vec2>& branch_pts) {
    double d = std::numeric_limits<double>::infinity();
    for (Vec2 b : branch_pts) d = std::min(d, dist(w, b));
    return d;
}

double subtended(Vec2 a, Vec2 b, Vec2 p) {
    const Vec2 u = a - p, v = b - p;
    if (norm2(u) == 0.0 || norm2(v) == 0.0) return 0.0;
    return std::fabs(std::atan2(cross(u, v), dot(u, v)));
}

/// Translates, screens the singular guard, and inserts linear midpoints until
/// every chord subtends at most `max_angle` from every branch point. Chords
/// touching a branch point (collision markers) are exempt from the angular
/// rule. Branch points the curve legitimately passes through (a marker sits
/// on them) are exempt from the singular guard.
std::vector<BasePoint> refine_for_lift(const ClosedCurve& curve,
                                       const std::vector<Vec2>& branch_pts, Vec2 translate,
                                       double max_angle, double singular_guard) {
    std::vector<char> is_marker(curve.size(), 0);
    for (std::size_t m : curve.markers)
        if (m < curve.size()) is_marker[m] = 1;

    std::vector<BasePoint> pts;
    pts.reserve(curve.size() * 2);
    for (std::size_t i = 0; i < curve.size(); ++i) {
        BasePoint bp{curve.points[i] - translate, false};
        if (dist_to_branch(bp.w, branch_pts) < 1e-12) {
            if (!is_marker[i])
                throw SingularityOnCurve(
                    "curve sample coincides with a branch point without a collision marker");
            bp.at_branch = true;
        }
        pts.push_back(bp);
    }

    std::vector<Vec2> guarded;  // branch points the curve must stay away from
    for (Vec2 b : branch_pts) {
        bool touched = false;
        for (const BasePoint& bp : pts)
            if (bp.at_branch && dist(bp.w, b) < 1e-12) touched = true;
        if (!touched) guarded.push_back(b);
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].at_branch) continue;
        if (dist_to_branch(pts[i].w, guarded) < singular_guard)
            throw SingularityOnCurve("curve passes within the singular guard of a branch point");
    }

    for (int round = 0; round < 16; ++round) {
        bool changed = false;
        std::vector<BasePoint> out;
        out.reserve(pts.size() * 2);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const BasePoint& a = pts[i];
            const BasePoint& b = pts[(i + 1) % pts.size()];
            out.push_back(a);
            if (a.at_branch || b.at_branch) continue;
            if (dist(a.w, b.w) < 1e-11) continue;
            bool split = false;
            for (Vec2 bp : branch_pts)
                if (subtended(a.w, b.w, bp) > max_angle) split = true;
            if (split) {
                out.push_back({(a.w + b.w) * 0.5, false});
                changed = true;
            }
        }
        pts.swap(out);
        if (!changed) return pts;
        if (pts.size() > 4'000'000)
            throw BranchTrackingFailure("lift refinement exploded near a branch point");
    }
    throw BranchTrackingFailure(
        "could not reach the angular sampling contract near a branch point");
}

/// Continuity-tracked choice between +cand and -cand given the previous lift
/// values. Just past a branch point the previous value vanishes and the
/// nearest-root rule turns ambiguous; a linear extrapolation through zero
/// resolves the sign there.
Cmplx pick_branch(Cmplx cand, Cmplx prev, Cmplx prev2, bool have_prev2, double scale) {
    Cmplx pred = prev;
    if (have_prev2 && std::abs(prev) < 1e-5 * scale) pred = 2.0 * prev - prev2;
    return (std::abs(cand - pred) <= std::abs(-cand - pred)) ? cand : -cand;
}

ClosedCurve curve_from(const std::vector<Cmplx>& zs) {
    ClosedCurve out;
    out.points.reserve(zs.size());
    for (const Cmplx& z : zs) {
        const Vec2 p = to_v(z);
        if (!out.points.empty() && dist(out.points.back(), p) == 0.0) continue;
        out.points.push_back(p);
    }
    while (out.points.size() > 1 && dist(out.points.front(), out.points.back()) == 0.0)
        out.points.pop_back();
    return out;
}

}  // namespace

const char* to_string(Cover cover) {
    switch (cover) {
        case Cover::levi_civita_E: return "levi_civita_E";
        case Cover::levi_civita_M: return "levi_civita_M";
        case Cover::birkhoff: return "birkhoff";
    }
    return "?";
}

Vec2 birkhoff_map(Vec2 z) {
    const Cmplx c = to_c(z);
    return to_v(0.5 * (c + 1.0 / c));
}

Vec2 squaring_map(Vec2 z, Vec2 center) {
    const Cmplx c = to_c(z);
    return to_v(c * c) + center;
}

LiftedCurve levi_civita_lift(const ClosedCurve& curve, Primary center, const EulerParams& params,
                             double singular_guard) {
    validate_curve(curve);
    const Vec2 center_pos = (center == Primary::E) ? params.earth() : params.moon();
    const Vec2 other_pos = (center == Primary::E) ? params.moon() : params.earth();

    const std::vector<Vec2> branch{{0.0, 0.0}};
    const auto base = refine_for_lift(curve, branch, center_pos, 0.2, singular_guard);

    double scale = 0;
    for (const BasePoint& bp : base) scale = std::max(scale, norm(bp.w));
    scale = std::sqrt(scale);

    std::vector<Cmplx> zs(base.size());
    double roundtrip = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const Cmplx cand = std::sqrt(to_c(base[i].w));
        zs[i] = (i == 0) ? cand
                         : pick_branch(cand, zs[i - 1], i >= 2 ? zs[i - 2] : Cmplx{}, i >= 2, scale);
        roundtrip = std::max(roundtrip, dist(to_v(zs[i] * zs[i]), base[i].w));
    }
    if (roundtrip > 1e-8)
        throw NumericError("Levi-Civita round trip error above 1e-8");

    // Continuation of the start point after one traversal decides closure.
    const Cmplx closing =
        pick_branch(std::sqrt(to_c(base[0].w)), zs.back(), zs[zs.size() - 2], true, scale);
    const double d_same = std::abs(closing - zs[0]);
    const double d_deck = std::abs(closing + zs[0]);
    if (std::min(d_same, d_deck) > 1e-6 * std::max(scale, 1.0))
        throw BranchTrackingFailure(
            "Levi-Civita lift did not return to either preimage of the base point");

    LiftedCurve lifted;
    lifted.cover = (center == Primary::E) ? Cover::levi_civita_E : Cover::levi_civita_M;
    lifted.center = center_pos;
    const Cmplx other = std::sqrt(to_c(other_pos - center_pos));
    lifted.lifted_singularities = {to_v(other), to_v(-other)};

    const int base_winding = winding_number(curve, center_pos);
    if (d_same <= d_deck) {
        lifted.component_count = 2;
        lifted.components.push_back(curve_from(zs));
        std::vector<Cmplx> negated(zs.size());
        std::transform(zs.begin(), zs.end(), negated.begin(), [](Cmplx z) { return -z; });
        lifted.components.push_back(curve_from(negated));
        if (base_winding % 2 != 0)
            throw NumericError("Levi-Civita parity violation: odd winding but disconnected lift");
    } else {
        // The second traversal is the deck image of the first.
        lifted.component_count = 1;
        std::vector<Cmplx> both = zs;
        both.reserve(zs.size() * 2);
        for (const Cmplx& z : zs) both.push_back(-z);
        lifted.components.push_back(curve_from(both));
        if (base_winding % 2 == 0)
            throw NumericError("Levi-Civita parity violation: even winding but connected lift");
    }
    return lifted;
}

LiftedCurve birkhoff_lift(const ClosedCurve& curve, double singular_guard) {
    validate_curve(curve);
    const std::vector<Vec2> branch{{-1.0, 0.0}, {1.0, 0.0}};
    const auto base = refine_for_lift(curve, branch, Vec2{0.0, 0.0}, 0.2, singular_guard);

    double scale = 0;
    for (const BasePoint& bp : base) scale = std::max(scale, norm(bp.w) + 1.0);

    // Track f = sqrt(w^2 - 1) continuously; z = w + f and the deck image is
    // w - f = 1/z.
    std::vector<Cmplx> fs(base.size());
    std::vector<Cmplx> zs(base.size());
    double roundtrip = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        const Cmplx w = to_c(base[i].w);
        const Cmplx cand = std::sqrt(w * w - 1.0);
        fs[i] = (i == 0) ? cand
                         : pick_branch(cand, fs[i - 1], i >= 2 ? fs[i - 2] : Cmplx{}, i >= 2, scale);
        zs[i] = w + fs[i];
        roundtrip = std::max(roundtrip, dist(to_v(0.5 * (zs[i] + 1.0 / zs[i])), base[i].w));
    }
    if (roundtrip > 1e-8)
        throw NumericError("Birkhoff round trip error above 1e-8");

    const Cmplx w0 = to_c(base[0].w);
    const Cmplx closing = w0 + pick_branch(std::sqrt(w0 * w0 - 1.0), fs.back(),
                                           fs[fs.size() - 2], true, scale);
    const double d_same = std::abs(closing - zs[0]);
    const double d_deck = std::abs(closing - 1.0 / zs[0]);
    if (std::min(d_same, d_deck) > 1e-6 * std::max(scale, 1.0))
        throw BranchTrackingFailure(
            "Birkhoff lift did not return to either preimage of the base point");

    LiftedCurve lifted;
    lifted.cover = Cover::birkhoff;

    const int w_e = winding_number(curve, Vec2{-1.0, 0.0});
    const int w_m = winding_number(curve, Vec2{1.0, 0.0});

    if (d_same <= d_deck) {
        lifted.component_count = 2;
        lifted.components.push_back(curve_from(zs));
        std::vector<Cmplx> inverted(zs.size());
        std::transform(zs.begin(), zs.end(), inverted.begin(), [](Cmplx z) { return 1.0 / z; });
        lifted.components.push_back(curve_from(inverted));
        if ((w_e + w_m) % 2 != 0)
            throw NumericError("Birkhoff parity violation: odd w_E + w_M but disconnected lift");
    } else {
        lifted.component_count = 1;
        std::vector<Cmplx> both = zs;
        both.reserve(zs.size() * 2);
        for (const Cmplx& z : zs) both.push_back(1.0 / z);
        lifted.components.push_back(curve_from(both));
        if ((w_e + w_m) % 2 == 0)
            throw NumericError("Birkhoff parity violation: even w_E + w_M but connected lift");
    }
    return lifted;
}

std::vector<Vec2> birkhoff_lift_path(const std::vector<Vec2>& path) {
    std::vector<Vec2> out;
    out.reserve(path.size());
    Cmplx prev{}, prev2{};
    for (std::size_t i = 0; i < path.size(); ++i) {
        const Cmplx w = to_c(path[i]);
        const Cmplx cand = std::sqrt(w * w - 1.0);
        const Cmplx f =
            (i == 0) ? cand : pick_branch(cand, prev, prev2, i >= 2, 1.0 + std::abs(w));
        prev2 = prev;
        prev = f;
        out.push_back(to_v(w + f));
    }
    return out;
}

int n_invariant(const LiftedCurve& lifted) {
    if (lifted.cover != Cover::birkhoff)
        throw DomainError("n invariant is defined for Birkhoff lifts");
    std::vector<int> values;
    for (const ClosedCurve& comp : lifted.components)
        values.push_back(std::abs(winding_number(comp, Vec2{0.0, 0.0})));
    for (int v : values)
        if (v != values.front())
            throw NumericError("Birkhoff components disagree on the n invariant");
    return values.front();
}

}  // namespace twocenter
