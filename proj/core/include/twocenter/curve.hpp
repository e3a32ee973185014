#pragma once

#include <cstddef>
#include <vector>

#include "twocenter/geometry.hpp"

namespace twocenter {

/// Oriented polyline, closed by default (the last point connects back to the
/// first). Collision-collision orbits of odd l bounce at both collisions and
/// exactly retrace themselves, so their geometric image is an open arc;
/// such traces carry is_closed = false. `markers` are sample indices of
/// distinguished points (collisions).
struct ClosedCurve {
    std::vector<Vec2> points;
    std::vector<std::size_t> markers;
    bool is_closed = true;

    std::size_t size() const { return points.size(); }
    std::size_t segment_count() const {
        return is_closed ? points.size() : points.size() - 1;
    }
    Vec2 at(std::size_t i) const { return points[i % points.size()]; }
    /// Directed segment i: points[i] -> points[i+1 mod n].
    Vec2 seg_a(std::size_t i) const { return points[i]; }
    Vec2 seg_b(std::size_t i) const { return points[(i + 1) % points.size()]; }
};

/// Throws DomainError unless the curve has >= 8 points with consecutive
/// points distinct (closing segment included when the curve is closed).
void validate_curve(const ClosedCurve& curve);

/// Total polyline length.
double curve_length(const ClosedCurve& curve);

/// Minimum distance from `p` to any segment of the curve.
double distance_to_curve(const ClosedCurve& curve, Vec2 p);

/// Winding number of the curve around `point` by summing signed subtended
/// angles. Requires the point to stay `min_dist` away from every segment
/// (PointOnCurve otherwise) and the angle sum to land within `residual_tol`
/// of an integer multiple of 2*pi (NumericError otherwise).
int winding_number(const ClosedCurve& curve, Vec2 point, double min_dist = 1e-9,
                   double residual_tol = 0.05);

/// Same traversal with reversed orientation; markers are remapped.
ClosedCurve reversed(const ClosedCurve& curve);

/// Hausdorff distance between the point sets of two curves (symmetric,
/// point-to-segment based).
double hausdorff_distance(const ClosedCurve& a, const ClosedCurve& b);

}  // namespace twocenter
