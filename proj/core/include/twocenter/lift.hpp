#pragma once

#include <vector>

#include "twocenter/curve.hpp"
#include "twocenter/dynamics.hpp"
#include "twocenter/errors.hpp"

namespace twocenter {

enum class Cover { levi_civita_E, levi_civita_M, birkhoff };

const char* to_string(Cover cover);

enum class Primary { E, M };

/// Forward covering maps. The squaring map is centered: z -> z^2 + center.
Vec2 birkhoff_map(Vec2 z);
Vec2 squaring_map(Vec2 z, Vec2 center);

/// Preimage of a closed curve under a branched double cover, with continuous
/// branch tracking. Either a single component (traversing the base twice) or
/// two components related by the deck transformation.
struct LiftedCurve {
    Cover cover = Cover::birkhoff;
    int component_count = 0;
    std::vector<ClosedCurve> components;       // size == component_count
    std::vector<Vec2> lifted_singularities;    // M1, M2 or E1, E2; empty for Birkhoff
    Vec2 center{0, 0};                         // translation used (Levi-Civita only)

    const ClosedCurve& component(int i) const { return components.at(i); }
};

/// Levi-Civita lift: translate the selected primary to the origin and lift
/// through the complex squaring map. One component iff the winding of the
/// curve around the center is odd (components otherwise related by z -> -z).
/// The inter-primary distance is not rescaled; the other primary pulls back
/// to the two recorded singularities.
LiftedCurve levi_civita_lift(const ClosedCurve& curve, Primary center, const EulerParams& params,
                             double singular_guard = 1e-6);

/// Birkhoff lift through B(z) = (z + 1/z)/2 with branch fixed points at the
/// primaries (+-1, 0). One component iff w_E + w_M is odd (components
/// otherwise related by z -> 1/z). Curves carrying collision markers may pass
/// through the fixed points exactly; the branch is continued through them.
LiftedCurve birkhoff_lift(const ClosedCurve& curve, double singular_guard = 1e-6);

/// Lifts an open polyline through the Birkhoff cover (one branch, continuity
/// tracked from the principal root at the first sample). Diagnostic helper
/// for coordinate-line geometry checks.
std::vector<Vec2> birkhoff_lift_path(const std::vector<Vec2>& path);

/// |winding of a lift component around the origin|; independent of the
/// component choice (asserted when two components exist).
int n_invariant(const LiftedCurve& lifted);

}  // namespace twocenter
