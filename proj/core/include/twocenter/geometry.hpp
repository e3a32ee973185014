#pragma once

#include <cmath>

namespace twocenter {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) { double n = norm(a); return n > 0 ? a / n : Vec2{0, 0}; }
// 90 degree counterclockwise rotation; "left" of a direction vector.
inline Vec2 perp_left(Vec2 a) { return {-a.y, a.x}; }

/// Distance from point p to the segment [a, b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Unsigned angle between the lines spanned by a and b, in [0, pi/2].
double line_angle(Vec2 a, Vec2 b);

}  // namespace twocenter
