#include "twocenter/curve.hpp"

#include <algorithm>
#include <cmath>

#include "twocenter/errors.hpp"

namespace twocenter {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return dist(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist(p, a + ab * t);
}

double line_angle(Vec2 a, Vec2 b) {
    const double c = std::fabs(cross(a, b));
    const double d = std::fabs(dot(a, b));
    return std::atan2(c, d);
}

void validate_curve(const ClosedCurve& curve) {
    if (curve.points.size() < 8) throw DomainError("curve needs at least 8 points");
    for (std::size_t i = 0; i < curve.segment_count(); ++i) {
        if (curve.seg_a(i).x == curve.seg_b(i).x && curve.seg_a(i).y == curve.seg_b(i).y)
            throw DomainError("curve has coincident consecutive points");
    }
}

double curve_length(const ClosedCurve& curve) {
    double total = 0.0;
    for (std::size_t i = 0; i < curve.segment_count(); ++i)
        total += dist(curve.seg_a(i), curve.seg_b(i));
    return total;
}

double distance_to_curve(const ClosedCurve& curve, Vec2 p) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curve.segment_count(); ++i)
        best = std::min(best, point_segment_distance(p, curve.seg_a(i), curve.seg_b(i)));
    return best;
}

int winding_number(const ClosedCurve& curve, Vec2 point, double min_dist, double residual_tol) {
    if (!curve.is_closed) throw DomainError("winding number needs a closed curve");
    if (distance_to_curve(curve, point) <= min_dist)
        throw PointOnCurve("winding query point lies on the curve");
    double angle = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const Vec2 u = curve.seg_a(i) - point;
        const Vec2 v = curve.seg_b(i) - point;
        angle += std::atan2(cross(u, v), dot(u, v));
    }
    const double turns = angle / (2.0 * M_PI);
    const double rounded = std::round(turns);
    if (std::fabs(turns - rounded) >= residual_tol)
        throw NumericError("winding number residual " + std::to_string(turns - rounded) +
                           " exceeds tolerance");
    return static_cast<int>(rounded);
}

ClosedCurve reversed(const ClosedCurve& curve) {
    ClosedCurve out;
    out.is_closed = curve.is_closed;
    out.points.assign(curve.points.rbegin(), curve.points.rend());
    const std::size_t n = curve.points.size();
    for (std::size_t m : curve.markers) out.markers.push_back((n - 1 - m) % n);
    std::sort(out.markers.begin(), out.markers.end());
    return out;
}

namespace {
double one_sided_hausdorff(const ClosedCurve& a, const ClosedCurve& b) {
    double worst = 0.0;
    for (const Vec2& p : a.points) worst = std::max(worst, distance_to_curve(b, p));
    return worst;
}
}  // namespace

double hausdorff_distance(const ClosedCurve& a, const ClosedCurve& b) {
    return std::max(one_sided_hausdorff(a, b), one_sided_hausdorff(b, a));
}

}  // namespace twocenter
