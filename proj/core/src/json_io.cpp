#include "twocenter/json_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace twocenter {

std::string json_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_quoted(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    out += '"';
    return out;
}

std::string json_array(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += items[i];
    }
    out += "]";
    return out;
}

JsonObject& JsonObject::raw(const std::string& key, std::string value) {
    items_.emplace_back(key, std::move(value));
    return *this;
}
JsonObject& JsonObject::number(const std::string& key, double v) { return raw(key, json_number(v)); }
JsonObject& JsonObject::integer(const std::string& key, std::int64_t v) {
    return raw(key, std::to_string(v));
}
JsonObject& JsonObject::text(const std::string& key, const std::string& v) {
    return raw(key, json_quoted(v));
}
JsonObject& JsonObject::boolean(const std::string& key, bool v) {
    return raw(key, v ? "true" : "false");
}

std::string JsonObject::str() const {
    auto sorted = items_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string out = "{";
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i) out += ",";
        out += json_quoted(sorted[i].first) + ":" + sorted[i].second;
    }
    out += "}";
    return out;
}

namespace {

std::string points_array(const std::vector<Vec2>& pts) {
    std::vector<std::string> items;
    items.reserve(pts.size());
    for (const Vec2& p : pts)
        items.push_back("[" + json_number(p.x) + "," + json_number(p.y) + "]");
    return json_array(items);
}

std::string markers_array(const std::vector<std::size_t>& markers) {
    std::vector<std::string> items;
    for (std::size_t m : markers) items.push_back(std::to_string(m));
    return json_array(items);
}

JsonObject orbit_fields(const OrbitTrace& trace) {
    JsonObject obj;
    obj.number("mu", trace.torus.params.mu)
        .number("c", trace.torus.params.c)
        .integer("k", trace.torus.k)
        .integer("l", trace.torus.l)
        .number("f_lambda", trace.torus.f_lambda)
        .number("lambda_max", trace.torus.lambda_max)
        .number("T_lambda", trace.torus.T_lambda)
        .number("T_nu", trace.torus.T_nu)
        .number("phase", trace.phase);
    return obj;
}

JsonObject invariant_fields(const InvariantSet& set) {
    JsonObject obj;
    obj.integer("j0_x2", set.j0.doubled)
        .integer("jE_x2", set.jE.doubled)
        .integer("jM_x2", set.jM.doubled)
        .integer("n", set.n)
        .integer("jEM", set.jEM);
    return obj;
}

}  // namespace

std::string orbit_json(const OrbitTrace& trace) {
    JsonObject obj = orbit_fields(trace);
    obj.raw("samples", points_array(trace.curve.points));
    obj.raw("collision_markers", markers_array(trace.curve.markers));
    obj.boolean("closed", trace.curve.is_closed);
    return obj.str() + "\n";
}

std::string orbit_csv(const ClosedCurve& curve) {
    std::string out = "q1,q2\n";
    for (const Vec2& p : curve.points)
        out += json_number(p.x) + "," + json_number(p.y) + "\n";
    return out;
}

std::string lift_json(const OrbitTrace& base, const LiftedCurve& lifted) {
    JsonObject obj = orbit_fields(base);
    obj.text("cover", to_string(lifted.cover));
    obj.integer("components", lifted.component_count);
    obj.raw("lifted_singularities", points_array(lifted.lifted_singularities));
    obj.raw("samples", points_array(lifted.component(0).points));
    if (lifted.component_count > 1)
        obj.raw("samples_second", points_array(lifted.component(1).points));
    obj.raw("collision_markers", markers_array(base.curve.markers));
    return obj.str() + "\n";
}

std::string arrangement_json(const Arrangement& arrangement) {
    std::vector<std::string> dps;
    for (const DoublePoint& dp : arrangement.vertices) {
        JsonObject obj;
        obj.number("x", dp.position.x)
            .number("y", dp.position.y)
            .number("s1", dp.s1)
            .number("s2", dp.s2)
            .number("angle", dp.angle);
        dps.push_back(obj.str());
    }
    std::vector<std::string> faces;
    for (const auto& face : arrangement.faces) {
        JsonObject obj;
        obj.integer("winding", face.winding)
            .raw("representative", "[" + json_number(face.representative.x) + "," +
                                       json_number(face.representative.y) + "]");
        faces.push_back(obj.str());
    }
    JsonObject obj;
    obj.raw("double_points", json_array(dps));
    obj.raw("faces", json_array(faces));
    obj.integer("jplus", viro_jplus(arrangement));
    return obj.str() + "\n";
}

std::string report_json(const VerificationReport& report) {
    JsonObject obj;
    obj.number("mu", report.mu).number("c", report.c).integer("k", report.k).integer("l", report.l);
    if (report.has_numeric) obj.raw("numeric", invariant_fields(report.numeric).str());
    obj.raw("closed_form", invariant_fields(report.closed_form).str());
    {
        JsonObject collision;
        collision.integer("numeric", report.collision_n_numeric)
            .integer("formula", report.collision_n_formula);
        obj.raw("collision_N", collision.str());
    }
    std::vector<std::string> checks;
    for (const CheckEntry& check : report.checks) {
        JsonObject entry;
        entry.text("name", check.name).boolean("pass", check.pass).text("detail", check.detail);
        checks.push_back(entry.str());
    }
    obj.raw("checks", json_array(checks));
    obj.boolean("all_pass", report.all_pass());
    return obj.str() + "\n";
}

LoadedOrbit load_orbit_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    LoadedOrbit out;
    out.mu = j.at("mu").get<double>();
    out.c = j.at("c").get<double>();
    out.k = j.at("k").get<int>();
    out.l = j.at("l").get<int>();
    out.f_lambda = j.value("f_lambda", 0.0);
    out.lambda_max = j.value("lambda_max", 0.0);
    out.T_lambda = j.value("T_lambda", 0.0);
    out.T_nu = j.value("T_nu", 0.0);
    out.phase = j.value("phase", 0.0);
    for (const auto& p : j.at("samples"))
        out.curve.points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (j.contains("collision_markers"))
        for (const auto& m : j.at("collision_markers"))
            out.curve.markers.push_back(m.get<std::size_t>());
    out.curve.is_closed = j.value("closed", true);
    return out;
}

}  // namespace twocenter
