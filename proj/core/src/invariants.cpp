#include "twocenter/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "twocenter/log.hpp"
#include "twocenter/model_curve.hpp"

namespace twocenter {

std::string InvariantSet::str() const {
    std::ostringstream os;
    os << "{j0 = " << j0.str() << ", jE = " << jE.str() << ", jM = " << jM.str() << ", (jEM, n) = ("
       << jEM << " mod " << 2 * n << ", " << n << ")}";
    return os.str();
}

ViroBreakdown viro_breakdown(const Arrangement& arrangement) {
    ViroBreakdown out;
    out.double_points = static_cast<std::int64_t>(arrangement.vertices.size());
    out.sum_w_sq = sum_winding_squares(arrangement);
    out.sum_ind_sq = sum_index_squares(arrangement);
    out.jplus = viro_jplus(arrangement);
    return out;
}

std::int64_t canonical_mod(std::int64_t value, std::int64_t modulus) {
    if (modulus <= 0) return value;
    const std::int64_t r = value % modulus;
    return r < 0 ? r + modulus : r;
}

HalfInteger j0_numeric(const ClosedCurve& curve, const EulerParams& params) {
    const std::int64_t jplus = viro_jplus(curve);
    const std::int64_t w_e = winding_number(curve, params.earth());
    const std::int64_t w_m = winding_number(curve, params.moon());
    return HalfInteger::from_doubled(2 * jplus + w_e * w_e + w_m * w_m);
}

namespace {

HalfInteger levi_civita_invariant(const ClosedCurve& curve, Primary center,
                                  const EulerParams& params) {
    const LiftedCurve lifted = levi_civita_lift(curve, center, params);
    std::vector<HalfInteger> values;
    for (const ClosedCurve& comp : lifted.components) {
        const std::int64_t jplus = viro_jplus(comp);
        const std::int64_t w1 = winding_number(comp, lifted.lifted_singularities[0]);
        const std::int64_t w2 = winding_number(comp, lifted.lifted_singularities[1]);
        values.push_back(HalfInteger::from_doubled(2 * jplus + w1 * w1 + w2 * w2));
    }
    for (const HalfInteger& v : values)
        if (v != values.front())
            throw NumericError("Levi-Civita components disagree on the invariant");
    return values.front();
}

}  // namespace

HalfInteger jE_numeric(const ClosedCurve& curve, const EulerParams& params) {
    return levi_civita_invariant(curve, Primary::E, params);
}

HalfInteger jM_numeric(const ClosedCurve& curve, const EulerParams& params) {
    return levi_civita_invariant(curve, Primary::M, params);
}

JEMResult jEM_numeric(const ClosedCurve& curve) {
    const LiftedCurve lifted = birkhoff_lift(curve);
    const std::int64_t n = n_invariant(lifted);
    std::vector<std::int64_t> raws;
    for (const ClosedCurve& comp : lifted.components) raws.push_back(viro_jplus(comp));
    for (std::int64_t r : raws)
        if (canonical_mod(r, 2 * n) != canonical_mod(raws.front(), 2 * n))
            throw NumericError("Birkhoff components disagree on jEM");
    JEMResult out;
    out.n = n;
    out.raw_jplus = raws.front();
    out.jEM = (n > 0) ? canonical_mod(raws.front(), 2 * n) : raws.front();
    return out;
}

CurveInvariants compute_curve_invariants(const ClosedCurve& curve, const EulerParams& params) {
    CurveInvariants out;
    const auto doubles = find_double_points(curve);
    out.base = viro_breakdown(build_arrangement(curve, doubles));
    out.w_e = winding_number(curve, params.earth());
    out.w_m = winding_number(curve, params.moon());
    out.set.j0 = HalfInteger::from_doubled(2 * out.base.jplus +
                                           static_cast<std::int64_t>(out.w_e) * out.w_e +
                                           static_cast<std::int64_t>(out.w_m) * out.w_m);

    auto lift_invariant = [&](Primary center, ViroBreakdown& breakdown, int& components,
                              std::int64_t& w1_out, std::int64_t& w2_out) {
        const LiftedCurve lifted = levi_civita_lift(curve, center, params);
        components = lifted.component_count;
        std::vector<HalfInteger> values;
        for (int i = 0; i < lifted.component_count; ++i) {
            const ClosedCurve& comp = lifted.component(i);
            const ViroBreakdown bd =
                viro_breakdown(build_arrangement(comp, find_double_points(comp)));
            const std::int64_t w1 = winding_number(comp, lifted.lifted_singularities[0]);
            const std::int64_t w2 = winding_number(comp, lifted.lifted_singularities[1]);
            values.push_back(HalfInteger::from_doubled(2 * bd.jplus + w1 * w1 + w2 * w2));
            if (i == 0) {
                breakdown = bd;
                w1_out = w1;
                w2_out = w2;
            }
        }
        for (const HalfInteger& v : values)
            if (v != values.front())
                throw NumericError("Levi-Civita components disagree on the invariant");
        return values.front();
    };
    out.set.jE =
        lift_invariant(Primary::E, out.lift_e, out.lc_components_e, out.lift_e_w1, out.lift_e_w2);
    out.set.jM =
        lift_invariant(Primary::M, out.lift_m, out.lc_components_m, out.lift_m_w1, out.lift_m_w2);

    const LiftedCurve bk = birkhoff_lift(curve);
    out.birkhoff_components = bk.component_count;
    const std::int64_t n = n_invariant(bk);
    std::vector<std::int64_t> raws;
    for (int i = 0; i < bk.component_count; ++i) {
        const ClosedCurve& comp = bk.component(i);
        const ViroBreakdown bd = viro_breakdown(build_arrangement(comp, find_double_points(comp)));
        if (i == 0) out.birkhoff = bd;
        raws.push_back(bd.jplus);
    }
    for (std::int64_t r : raws)
        if (canonical_mod(r, 2 * n) != canonical_mod(raws.front(), 2 * n))
            throw NumericError("Birkhoff components disagree on jEM");
    out.set.n = n;
    out.set.jEM = (n > 0) ? canonical_mod(raws.front(), 2 * n) : raws.front();
    return out;
}

InvariantSet theorem_formulas(int k, int l) {
    if (k <= 0 || l <= 0 || std::gcd(k, l) != 1)
        throw DomainError("theorem formulas need coprime positive k, l");
    const std::int64_t kk = k, ll = l;
    InvariantSet set;
    set.j0 = HalfInteger::from_int(kk * ll - kk + 1);
    if (l % 2 == 0) {
        if (std::gcd(kk, ll / 2) != 1)
            throw NumericError("gcd(k, l/2) != 1 cannot happen for coprime k, even l");
        set.jE = HalfInteger::from_int(kk * ll / 2 - kk + 1);
    } else {
        set.jE = HalfInteger::from_int(2 * kk * ll - 2 * kk + 1);
    }
    set.jM = set.jE;
    set.n = ll;
    set.jEM = canonical_mod(1 - kk + kk * ll - ll * ll, 2 * ll);
    return set;
}

std::int64_t selfintersection_formula(int k, int l) {
    if (k <= 0 || l <= 0 || std::gcd(k, l) != 1)
        throw DomainError("self-intersection formula needs coprime positive k, l");
    const std::int64_t kk = k, ll = l;
    if (l % 2 == 0) {
        const std::int64_t numerator = kk * (ll - 1) - 1;  // k odd, so this is even
        return numerator / 2;
    }
    return kk * (ll - 1) / 2;
}

HalfInteger distinguished_j0(DistinguishedKind kind, std::int64_t n_self) {
    if (n_self < 0) throw DomainError("self-intersection count must be nonnegative");
    switch (kind) {
        case DistinguishedKind::brake_brake: return HalfInteger::from_int(2 * n_self);
        case DistinguishedKind::brake_collision: return HalfInteger::from_doubled(4 * n_self + 1);
        case DistinguishedKind::collision_type_I: return HalfInteger::from_int(2 * n_self + 2);
        case DistinguishedKind::collision_type_II: return HalfInteger::from_int(2 * n_self + 1);
    }
    throw DomainError("unknown distinguished orbit kind");
}

std::int64_t covering_jplus_check(std::int64_t degree, std::int64_t jplus_base,
                                  std::int64_t n_base, std::int64_t n_lift) {
    return degree * degree * jplus_base - (degree * degree - 1) + n_lift - degree * degree * n_base;
}

// ---------------------------------------------------------------------------
// verify_torus

namespace {

void add_check(VerificationReport& report, const std::string& name, bool pass,
               const std::string& detail) {
    report.checks.push_back({name, pass, detail});
    if (!pass) log_info("check failed: " + name + " (" + detail + ")");
}

std::string fmt_int(std::int64_t v) { return std::to_string(v); }

/// Five-point finite-difference momenta along the evaluator, used to check
/// the energy relation against the analytic time parameterization.
double max_energy_residual_fd(const OrbitEvaluator& eval, const EulerParams& params,
                              double t_end, int probes) {
    const double h = 1e-3;
    double worst = 0;
    for (int i = 0; i < probes; ++i) {
        const double t = t_end * (i + 0.37) / probes;
        auto lam = [&](double tt) { return eval.state_at(tt).lambda; };
        auto nu = [&](double tt) { return eval.state_at(tt).nu; };
        EllipticState s = eval.state_at(t);
        s.p_lambda =
            (-lam(t + 2 * h) + 8 * lam(t + h) - 8 * lam(t - h) + lam(t - 2 * h)) / (12 * h);
        s.p_nu = (-nu(t + 2 * h) + 8 * nu(t + h) - 8 * nu(t - h) + nu(t - 2 * h)) / (12 * h);
        worst = std::max(worst, std::fabs(energy_residual(params, s)));
    }
    return worst;
}

struct NumericPipeline {
    OrbitTrace trace;
    CurveInvariants inv;
};

NumericPipeline run_numeric_pipeline(const TorusData& torus, double phase, int resolution) {
    NumericPipeline out;
    out.trace = trace_orbit(torus, phase, resolution);
    out.inv = compute_curve_invariants(out.trace.curve, torus.params);
    return out;
}

}  // namespace

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

VerificationReport verify_torus(const EulerParams& params, int k, int l,
                                const VerifyOptions& options) {
    VerificationReport report;
    report.mu = params.mu;
    report.c = params.c;
    report.k = k;
    report.l = l;

    if (k <= 0 || l <= 0 || std::gcd(k, l) != 1) {
        add_check(report, "preconditions", false,
                  "k and l must be coprime positive integers, got k = " + std::to_string(k) +
                      ", l = " + std::to_string(l));
        return report;
    }
    report.closed_form = theorem_formulas(k, l);
    report.collision_n_formula = selfintersection_formula(k, l);

    TorusData torus;
    try {
        torus = find_torus(params, k, l);
    } catch (const Error& e) {
        add_check(report, "find_torus", false, e.what());
        return report;
    }
    add_check(report, "find_torus", true,
              "f_lambda = " + std::to_string(torus.f_lambda) +
                  ", lambda_max = " + std::to_string(torus.lambda_max));

    try {
        const RegionLabel region = classify_region(params, torus.f_lambda);
        add_check(report, "region_is_L", region == RegionLabel::L, to_string(region));
    } catch (const Error& e) {
        add_check(report, "region_is_L", false, e.what());
    }

    {
        const double r = torus.rotation_number();
        const double target = static_cast<double>(k) / l;
        const double fine_tol = std::max(options.tol_quadrature / 10, 2e-13);
        const double r_fine = period_nu(params, torus.f_lambda, fine_tol) /
                              period_lambda(params, torus.f_lambda, fine_tol);
        const bool pass =
            std::fabs(r - target) <= 1e-10 && std::fabs(r_fine - r) < 1e-9;
        add_check(report, "rotation_number", pass,
                  "R = " + std::to_string(r) + ", refined drift = " + std::to_string(r_fine - r));
    }

    // Generic orbit pipeline, with phase jitter when a phase happens to be
    // non-generic (near-tangency or triple point at that slice).
    const double base_phase = options.phase >= 0 ? options.phase : generic_phase(torus);
    static constexpr double jitter[] = {1.0, 0.731, 1.262, 0.547, 1.417};
    NumericPipeline pipeline;
    bool pipeline_ok = false;
    std::string pipeline_error;
    double used_phase = base_phase;
    for (int attempt = 0; attempt <= options.phase_retries && !pipeline_ok; ++attempt) {
        used_phase = base_phase * jitter[std::min<std::size_t>(attempt, std::size(jitter) - 1)];
        try {
            pipeline = run_numeric_pipeline(torus, used_phase, options.resolution);
            pipeline_ok = true;
        } catch (const NonGenericCurve& e) {
            pipeline_error = e.what();
        } catch (const CollisionOnTrace& e) {
            pipeline_error = e.what();
        } catch (const Error& e) {
            pipeline_error = e.what();
            break;
        }
    }
    add_check(report, "generic_orbit_pipeline", pipeline_ok,
              pipeline_ok ? "phase = " + std::to_string(used_phase) : pipeline_error);

    if (pipeline_ok) {
        report.has_numeric = true;
        report.numeric = pipeline.inv.set;
        const InvariantSet& closed = report.closed_form;
        const CurveInvariants& inv = pipeline.inv;

        add_check(report, "closure", pipeline.trace.closure_error <= options.tol_geometry,
                  "closure error = " + std::to_string(pipeline.trace.closure_error));
        {
            const double resid =
                max_energy_residual_fd(pipeline.trace.evaluator, params, pipeline.trace.t_end, 128);
            add_check(report, "energy_residual", resid <= options.tol_geometry,
                      "max |F_lambda + F_nu| = " + std::to_string(resid));
        }
        {
            bool monotone = true;
            for (std::size_t i = 0; i + 1 < pipeline.trace.states.size(); ++i)
                if (pipeline.trace.states[i + 1].nu <= pipeline.trace.states[i].nu) monotone = false;
            add_check(report, "monotone_nu", monotone, "strictly increasing nu along the trace");
        }
        {
            double max_abs_lambda = 0;
            for (const EllipticState& s : pipeline.trace.states)
                max_abs_lambda = std::max(max_abs_lambda, std::fabs(s.lambda));
            add_check(report, "lambda_bounded", max_abs_lambda <= torus.lambda_max + 1e-9,
                      "max |lambda| = " + std::to_string(max_abs_lambda));
        }

        add_check(report, "j0", inv.set.j0 == closed.j0,
                  "numeric " + inv.set.j0.str() + " vs closed form " + closed.j0.str() +
                      " (J+ = " + fmt_int(inv.base.jplus) + ", #D = " +
                      fmt_int(inv.base.double_points) + ", sum w^2 = " +
                      fmt_int(inv.base.sum_w_sq) + ", sum ind^2 = " + inv.base.sum_ind_sq.str() +
                      ")");
        add_check(report, "jE", inv.set.jE == closed.jE,
                  "numeric " + inv.set.jE.str() + " vs closed form " + closed.jE.str());
        add_check(report, "jM", inv.set.jM == closed.jM,
                  "numeric " + inv.set.jM.str() + " vs closed form " + closed.jM.str());
        add_check(report, "jE_equals_jM", inv.set.jE == inv.set.jM, "");
        if (l % 2 == 1)
            add_check(report, "parity_identity",
                      inv.set.jE == HalfInteger::from_doubled(2 * inv.set.j0.doubled - 2),
                      "l odd: jE = 2 j0 - 1");

        add_check(report, "levi_civita_parity",
                  (inv.lc_components_e == 1) == (std::abs(inv.w_e) % 2 == 1) &&
                      (inv.lc_components_m == 1) == (std::abs(inv.w_m) % 2 == 1),
                  "w_E = " + std::to_string(inv.w_e) + " (components " +
                      std::to_string(inv.lc_components_e) + "), w_M = " +
                      std::to_string(inv.w_m) + " (components " +
                      std::to_string(inv.lc_components_m) + ")");
        add_check(report, "birkhoff_parity",
                  (inv.birkhoff_components == 1) == (std::abs(inv.w_e + inv.w_m) % 2 == 1),
                  "w_E + w_M = " + std::to_string(inv.w_e + inv.w_m) + ", components = " +
                      std::to_string(inv.birkhoff_components));
        add_check(report, "n_equals_l", inv.set.n == l, "n = " + fmt_int(inv.set.n));
        add_check(report, "jEM", inv.set.jEM == closed.jEM && inv.set.n == closed.n,
                  "numeric " + fmt_int(inv.set.jEM) + " mod " + fmt_int(2 * inv.set.n) +
                      " (raw J+ = " + fmt_int(inv.birkhoff.jplus) + ") vs closed form " +
                      fmt_int(closed.jEM));
    }

    // Route 2 for jEM: the covering formula over the degree-l cover of the
    // circle with kl - k lift double points.
    {
        const std::int64_t via_cover = covering_jplus_check(l, 0, 0, static_cast<std::int64_t>(k) * l - k);
        add_check(report, "jEM_covering_formula",
                  canonical_mod(via_cover, 2 * static_cast<std::int64_t>(l)) == report.closed_form.jEM,
                  "covering route gives " + fmt_int(via_cover) + " = " +
                      fmt_int(canonical_mod(via_cover, 2 * static_cast<std::int64_t>(l))) + " mod " +
                      fmt_int(2 * l));
    }

    // Route 3 for jEM (l even, k >= 2): combinatorial model of the Birkhoff
    // preimage; the straight-chord construction degenerates for k = 1.
    if (l % 2 == 0 && k >= 2) {
        try {
            const ClosedCurve model = birkhoff_model_curve(k, l);
            const auto doubles = find_double_points(model);
            const std::int64_t jplus = viro_jplus(build_arrangement(model, doubles));
            const std::int64_t expected_doubles = static_cast<std::int64_t>(k) * l - k;
            const bool pass =
                canonical_mod(jplus, 2 * static_cast<std::int64_t>(l)) == report.closed_form.jEM &&
                static_cast<std::int64_t>(doubles.size()) == expected_doubles;
            add_check(report, "jEM_model_curve", pass,
                      "model J+ = " + fmt_int(jplus) + ", #D = " + fmt_int(doubles.size()) +
                          " (expected " + fmt_int(expected_doubles) + ")");
        } catch (const Error& e) {
            add_check(report, "jEM_model_curve", false, e.what());
        }
    }

    // Collision-collision orbit: self-intersection count vs the closed form.
    try {
        const OrbitTrace collision = collision_orbit(torus, 0, options.resolution);
        IntersectOptions opts;
        opts.exclude_points = {params.earth(), params.moon()};
        opts.exclude_radius = 1e-6;
        const auto doubles = find_double_points(collision.curve, opts);
        report.collision_n_numeric = static_cast<std::int64_t>(doubles.size());
        add_check(report, "collision_count",
                  report.collision_n_numeric == report.collision_n_formula,
                  "numeric " + fmt_int(report.collision_n_numeric) + " vs formula " +
                      fmt_int(report.collision_n_formula));
        if (l % 2 == 0) {
            ClosedCurve mirrored = collision.curve;
            for (Vec2& p : mirrored.points) p.y = -p.y;
            const double h = hausdorff_distance(collision.curve, mirrored);
            add_check(report, "collision_symmetry", h < 1e-6,
                      "Hausdorff distance to q1-reflection = " + std::to_string(h));
        }
    } catch (const Error& e) {
        add_check(report, "collision_count", false, e.what());
    }

    {
        const DistinguishedKind kind = (l % 2 == 0) ? DistinguishedKind::collision_type_I
                                                    : DistinguishedKind::collision_type_II;
        const HalfInteger via_distinguished = distinguished_j0(kind, report.collision_n_formula);
        add_check(report, "distinguished_j0_consistency",
                  via_distinguished == report.closed_form.j0,
                  "distinguished j0 = " + via_distinguished.str());
    }

    return report;
}

}  // namespace twocenter
