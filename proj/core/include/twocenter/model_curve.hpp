#pragma once

#include "twocenter/curve.hpp"

namespace twocenter {

/// Combinatorial model of the Birkhoff preimage of a collision-collision
/// orbit on a T_{k,l} torus, l even: marked points on l+1 concentric circles
/// zig-zag-connected through 2k rays and chamfered into a generic immersion.
/// Homotopic to the analytic lift, so its J+ reduces to the same jEM class;
/// used as an independent cross-check of the analytic route.
ClosedCurve birkhoff_model_curve(int k, int l);

}  // namespace twocenter
