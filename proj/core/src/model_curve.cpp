#include "twocenter/model_curve.hpp"

#include <cmath>
#include <numeric>

#include "twocenter/errors.hpp"

namespace twocenter {

ClosedCurve birkhoff_model_curve(int k, int l) {
    if (k <= 0 || l <= 0 || std::gcd(k, l) != 1)
        throw DomainError("model curve needs coprime positive k, l");
    if (l % 2 != 0) throw DomainError("model curve is defined for even l");
    if (k == 1)
        throw DomainError(
            "model curve needs k >= 2: with only two rays the straight-chord "
            "realization degenerates onto the real axis");

    constexpr double pi = 3.14159265358979323846;
    const int rays = 2 * k;
    const double radial_step = 0.35;

    // Vertex of the zig-zag at step m: circle index bounces over 0..l while
    // the ray index advances by one each step; 2*k*l steps close the loop.
    const int steps = 2 * k * l;
    std::vector<Vec2> verts(steps);
    for (int m = 0; m < steps; ++m) {
        const int z = m % (2 * l);
        const int circle = (z <= l) ? z : 2 * l - z;
        const double r = std::exp((circle - l / 2) * radial_step);
        const double angle = -pi + (m % rays) * (pi / k);
        verts[m] = {r * std::cos(angle), r * std::sin(angle)};
    }

    // Chamfer every corner so all crossings are interior to segments.
    ClosedCurve curve;
    curve.points.reserve(2 * steps);
    for (int m = 0; m < steps; ++m) {
        const Vec2 prev = verts[(m + steps - 1) % steps];
        const Vec2 here = verts[m];
        const Vec2 next = verts[(m + 1) % steps];
        const double cut = 0.04 * std::min(dist(prev, here), dist(here, next));
        curve.points.push_back(here + normalized(prev - here) * cut);
        curve.points.push_back(here + normalized(next - here) * cut);
    }
    return curve;
}

}  // namespace twocenter
