#include "twocenter/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace twocenter {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Frame {
    double scale = 1, cx = 0, cy = 0;
    double X(double x) const { return kWidth / 2 + scale * (x - cx); }
    double Y(double y) const { return kHeight / 2 - scale * (y - cy); }
};

}  // namespace

std::string orbit_svg(const OrbitTrace& trace, const SvgOptions& options) {
    const double a = std::cosh(trace.torus.lambda_max);
    const double b = std::sinh(trace.torus.lambda_max);

    Frame frame;
    frame.scale = 0.95 * std::min(kWidth / (2 * a), kHeight / (2 * b));
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << " " << kHeight
        << "\">\n";

    // Bounding ellipse of the lemniscate region.
    svg << "  <ellipse cx=\"" << px(frame.X(0)) << "\" cy=\"" << px(frame.Y(0)) << "\" rx=\""
        << px(frame.scale * a) << "\" ry=\"" << px(frame.scale * b)
        << "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"6 4\"/>\n";

    // q1-axis for reference.
    svg << "  <line x1=\"" << px(frame.X(-a)) << "\" y1=\"" << px(frame.Y(0)) << "\" x2=\""
        << px(frame.X(a)) << "\" y2=\"" << px(frame.Y(0))
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";

    svg << "  <path fill=\"none\" stroke=\"#1f3d7a\" stroke-width=\"1.5\" d=\"";
    const auto& pts = trace.curve.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        svg << (i == 0 ? "M" : "L") << px(frame.X(pts[i].x)) << " " << px(frame.Y(pts[i].y));
    }
    if (trace.curve.is_closed) svg << "Z";
    svg << "\"/>\n";

    if (options.arrows) {
        const std::size_t step = std::max<std::size_t>(pts.size() / 12, 2);
        for (std::size_t i = 0; i + 1 < pts.size(); i += step) {
            const Vec2 p = pts[i];
            const Vec2 d = normalized(pts[i + 1] - pts[i]);
            const Vec2 n = perp_left(d);
            const Vec2 tip = p + d * (6.0 / frame.scale);
            const Vec2 l = p + n * (2.5 / frame.scale);
            const Vec2 r = p - n * (2.5 / frame.scale);
            svg << "  <polygon fill=\"#1f3d7a\" points=\"" << px(frame.X(tip.x)) << ","
                << px(frame.Y(tip.y)) << " " << px(frame.X(l.x)) << "," << px(frame.Y(l.y)) << " "
                << px(frame.X(r.x)) << "," << px(frame.Y(r.y)) << "\"/>\n";
        }
    }

    auto dot = [&](Vec2 p, const char* color, double r) {
        svg << "  <circle cx=\"" << px(frame.X(p.x)) << "\" cy=\"" << px(frame.Y(p.y)) << "\" r=\""
            << r << "\" fill=\"" << color << "\"/>\n";
    };
    dot(trace.torus.params.earth(), "#c01616", 4.0);
    dot(trace.torus.params.moon(), "#c01616", 4.0);
    svg << "  <text x=\"" << px(frame.X(-1) - 14) << "\" y=\"" << px(frame.Y(0) + 16)
        << "\" font-size=\"14\" fill=\"#c01616\">E</text>\n";
    svg << "  <text x=\"" << px(frame.X(1) + 6) << "\" y=\"" << px(frame.Y(0) + 16)
        << "\" font-size=\"14\" fill=\"#c01616\">M</text>\n";

    for (std::size_t m : trace.curve.markers)
        if (m < pts.size()) dot(pts[m], "#e08714", 3.0);

    svg << "</svg>\n";
    return svg.str();
}

}  // namespace twocenter
