#pragma once

#include <string>

#include "twocenter/dynamics.hpp"

namespace twocenter {

struct SvgOptions {
    bool arrows = false;  // draw orientation arrows along the curve
};

/// Renders the orbit, the bounding ellipse lambda = lambda_max, the two
/// primaries, and the collision markers into an 800x600 viewBox with a 5%
/// margin.
std::string orbit_svg(const OrbitTrace& trace, const SvgOptions& options = {});

}  // namespace twocenter
