#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "twocenter/curve.hpp"
#include "twocenter/errors.hpp"
#include "twocenter/geometry.hpp"
#include "twocenter/half_integer.hpp"

namespace twocenter {

/// Transverse self-intersection of a closed polyline. Parameters are
/// arclengths along the curve, s1 < s2; tangents are unit directions of the
/// two branches at the crossing and `angle` the angle between their lines.
struct DoublePoint {
    Vec2 position;
    double s1 = 0;
    double s2 = 0;
    Vec2 tangent1;
    Vec2 tangent2;
    double angle = 0;
};

struct IntersectOptions {
    double cluster_tol = 1e-7;  // spatial dedup radius for crossing candidates
    double angle_tol = 1e-3;    // transversality threshold (radians)
    // Crossing clusters within exclude_radius of any of these points are
    // dropped (collision-orbit counting excludes the collision points).
    std::vector<Vec2> exclude_points;
    double exclude_radius = 0.0;
};

/// All transverse double points of the curve, canonically sorted by s1.
/// Throws NonGenericCurve on a sub-tolerance crossing angle or a cluster
/// with three or more branch passages.
std::vector<DoublePoint> find_double_points(const ClosedCurve& curve,
                                            const IntersectOptions& options = {});

/// Planar subdivision induced by the curve: vertices are the double points,
/// edges the curve arcs between consecutive passages, faces the connected
/// components of the complement with their winding numbers.
struct Arrangement {
    struct Arc {
        int from = -1;             // vertex ids, -1 only when the curve is embedded
        int to = -1;
        std::vector<Vec2> points;  // geometry, including both endpoints
        double length = 0;
    };
    struct Face {
        int winding = 0;
        Vec2 representative;
        bool unbounded = false;
        std::vector<int> boundary_darts;  // dart = 2*arc + (forward ? 0 : 1)
    };

    std::vector<DoublePoint> vertices;
    std::vector<Arc> arcs;
    std::vector<Face> faces;
    std::vector<int> dart_face;               // face id per dart
    std::vector<std::array<int, 4>> sectors;  // per vertex: face of each of the
                                              // four sectors, counterclockwise

    int face_of_dart(int dart) const { return dart_face[dart]; }
};

Arrangement build_arrangement(const ClosedCurve& curve, const std::vector<DoublePoint>& doubles);

/// Arithmetic mean of the four sector windings at a double point
/// (sector multiplicity; a face touching the vertex twice counts twice).
HalfInteger double_point_index(const Arrangement& arrangement, int vertex);

/// Sum over faces of winding^2 and over double points of index^2, plus the
/// Viro combination J+ = 1 + #D - sum w^2 + sum ind^2 (always an integer).
std::int64_t sum_winding_squares(const Arrangement& arrangement);
HalfInteger sum_index_squares(const Arrangement& arrangement);
std::int64_t viro_jplus(const Arrangement& arrangement);

/// Convenience: find double points, build the arrangement, evaluate Viro.
std::int64_t viro_jplus(const ClosedCurve& curve, const IntersectOptions& options = {});

}  // namespace twocenter
