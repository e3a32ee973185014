#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "twocenter/dynamics.hpp"
#include "twocenter/invariants.hpp"
#include "twocenter/lift.hpp"
#include "twocenter/topology.hpp"

namespace twocenter {

/// All writers emit keys sorted and floats in 17-significant-digit form, so
/// identical inputs give byte-identical output.

/// Minimal JSON object emitter with sorted keys; nlohmann is used only for
/// parsing.
class JsonObject {
public:
    JsonObject& raw(const std::string& key, std::string value);
    JsonObject& number(const std::string& key, double v);
    JsonObject& integer(const std::string& key, std::int64_t v);
    JsonObject& text(const std::string& key, const std::string& v);
    JsonObject& boolean(const std::string& key, bool v);
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

std::string json_number(double v);
std::string json_quoted(const std::string& s);
std::string json_array(const std::vector<std::string>& items);

std::string orbit_json(const OrbitTrace& trace);
std::string orbit_csv(const ClosedCurve& curve);

/// Orbit dump augmented with the covering data of one lift.
std::string lift_json(const OrbitTrace& base, const LiftedCurve& lifted);

std::string arrangement_json(const Arrangement& arrangement);

std::string report_json(const VerificationReport& report);

struct LoadedOrbit {
    ClosedCurve curve;
    double mu = 0.5, c = -0.5;
    int k = 0, l = 0;
    double f_lambda = 0, lambda_max = 0, T_lambda = 0, T_nu = 0, phase = 0;
};

/// Parses an orbit dump produced by orbit_json.
LoadedOrbit load_orbit_json(const std::string& text);

}  // namespace twocenter
