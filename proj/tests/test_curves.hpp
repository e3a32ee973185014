#pragma once

// Synthetic closed curves used across the unit and acceptance suites.

#include <cmath>
#include <vector>

#include "twocenter/curve.hpp"

namespace test_curves {

constexpr double kPi = 3.14159265358979323846;

inline twocenter::ClosedCurve circle(twocenter::Vec2 center, double radius, int n = 256,
                                     bool ccw = true) {
    twocenter::ClosedCurve out;
    for (int i = 0; i < n; ++i) {
        const double t = 2 * kPi * i / n * (ccw ? 1.0 : -1.0);
        out.points.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
    }
    return out;
}

/// Circle traversed `winding` times with a slight radial modulation so that
/// consecutive samples never coincide.
inline twocenter::ClosedCurve multi_circle(twocenter::Vec2 center, double radius, int winding,
                                           int n = 1024) {
    twocenter::ClosedCurve out;
    for (int i = 0; i < n; ++i) {
        const double s = 2 * kPi * i / n;  // base parameter, one full period
        const double t = winding * s;
        const double r = radius * (1.0 + 0.08 * std::sin(s));
        out.points.push_back({center.x + r * std::cos(t), center.y + r * std::sin(t)});
    }
    return out;
}

/// Figure eight (Gerono lemniscate), one transverse double point at 0.
inline twocenter::ClosedCurve figure_eight(int n = 512) {
    twocenter::ClosedCurve out;
    for (int i = 0; i < n; ++i) {
        const double t = 2 * kPi * i / n;
        out.points.push_back({std::sin(2 * t) * 0.6, std::sin(t)});
    }
    return out;
}

/// Limacon r = 1 + 2 cos(theta): inner loop of winding 2; J+ = -2 (a K_2).
inline twocenter::ClosedCurve limacon(int n = 1024) {
    twocenter::ClosedCurve out;
    for (int i = 0; i < n; ++i) {
        const double t = 2 * kPi * i / n;
        const double r = 1.0 + 2.0 * std::cos(t);
        out.points.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return out;
}

/// Standard curve K_j: circle (j = 1) with j-1 interior loops, each a
/// positively traversed curl attached through one double point; K_0 is the
/// figure eight. J+(K_j) = 2 - 2j for j >= 1, J+(K_0) = 0.
///
/// Each curl is a prolate-cycloid perturbation added to the circle inside a
/// window around its site; the perturbation vanishes smoothly at the window
/// edges, so the polyline stays continuous.
inline twocenter::ClosedCurve standard_curve(int j, int samples_per_unit = 160) {
    using twocenter::Vec2;
    if (j == 0) return figure_eight(8 * samples_per_unit);
    twocenter::ClosedCurve out;
    const int curls = j - 1;
    const int n = std::max(8 * samples_per_unit, 256 * (curls + 1));
    const double width = 0.9 / std::max(curls, 1);  // half-window in angle
    for (int i = 0; i < n; ++i) {
        const double t = 2 * kPi * i / n;
        Vec2 p{std::cos(t), std::sin(t)};
        for (int r = 0; r < curls; ++r) {
            const double phi = 2 * kPi * (r + 0.5) / std::max(curls, 1);
            double d = t - phi;
            while (d > kPi) d -= 2 * kPi;
            while (d < -kPi) d += 2 * kPi;
            if (std::fabs(d) >= width) continue;
            const double s = kPi * d / width;  // in [-pi, pi]
            const double a = 1.7;              // cycloid prolateness, > 1
            const Vec2 tangent{-std::sin(phi), std::cos(phi)};
            const Vec2 inward{-std::cos(phi), -std::sin(phi)};
            const double u = -(width / kPi) * a * std::sin(s);
            const double v = 0.35 * width * (1.0 + std::cos(s)) * 0.5;
            p += tangent * u + inward * v;
        }
        if (!out.points.empty() && twocenter::dist(out.points.back(), p) < 1e-12) continue;
        out.points.push_back(p);
    }
    return out;
}

/// Three diameters of the unit circle joined by arcs: an exact triple point
/// at the origin.
inline twocenter::ClosedCurve triple_point_star(int n_arc = 64) {
    using twocenter::Vec2;
    twocenter::ClosedCurve out;
    auto on_circle = [](double deg) {
        const double t = deg * kPi / 180.0;
        return Vec2{std::cos(t), std::sin(t)};
    };
    auto add_line = [&](double deg_from, double deg_to, int steps) {
        const Vec2 a = on_circle(deg_from), b = on_circle(deg_to);
        for (int i = 0; i < steps; ++i)
            out.points.push_back(a + (b - a) * (static_cast<double>(i) / steps));
    };
    auto add_arc = [&](double deg_from, double deg_to, int steps) {
        for (int i = 0; i < steps; ++i)
            out.points.push_back(on_circle(deg_from + (deg_to - deg_from) * i / steps));
    };
    add_line(0, 180, n_arc);
    add_arc(180, 60, n_arc);
    add_line(60, 240, n_arc);
    add_arc(240, 120, n_arc);
    add_line(120, 300, n_arc);
    add_arc(300, 360, n_arc);
    return out;
}

inline twocenter::ClosedCurve translated(const twocenter::ClosedCurve& curve, twocenter::Vec2 d) {
    twocenter::ClosedCurve out = curve;
    for (auto& p : out.points) p += d;
    return out;
}

inline twocenter::ClosedCurve rotated(const twocenter::ClosedCurve& curve, double angle) {
    twocenter::ClosedCurve out = curve;
    const double c = std::cos(angle), s = std::sin(angle);
    for (auto& p : out.points) p = {c * p.x - s * p.y, s * p.x + c * p.y};
    return out;
}

}  // namespace test_curves
