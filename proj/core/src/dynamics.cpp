#include "twocenter/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "quadrature_detail.hpp"
#include "twocenter/log.hpp"

namespace twocenter {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

/// Lambda-side effective dynamics on one leaf. The squared momentum is the
/// quadratic c x^2 + x + f in x = cosh(lambda); it is evaluated in product
/// form over its roots so that it vanishes exactly at the turning point and
/// keeps full relative accuracy near lambda = 0 when the oscillation is
/// nearly degenerate.
struct LambdaLeaf {
    double c = 0, f = 0;
    double x_lo = 0, x_hi = 0;
    double one_minus_xlo = 0;
    double lambda_max = 0;

    // cosh(lambda) - x_lo, cancellation-free.
    double d_lo(double abs_lambda) const {
        const double sh = std::sinh(0.5 * abs_lambda);
        return 2.0 * sh * sh + one_minus_xlo;
    }
    // x_hi - cosh(lambda) = 2 sinh((lm+|l|)/2) sinh((lm-|l|)/2).
    double d_hi(double abs_lambda) const {
        return 2.0 * std::sinh(0.5 * (lambda_max + abs_lambda)) *
               std::sinh(0.5 * (lambda_max - abs_lambda));
    }
    double psq(double lambda) const {
        const double al = std::fabs(lambda);
        return 2.0 * (-c) * d_lo(al) * d_hi(al);
    }
};

/// Nu-side effective dynamics in completed-square form: the squared momentum
/// is 2 * ((-c) (cos nu - u_v)^2 + gap) with gap = b1^2/(4c) - f.
struct NuLeaf {
    double c = 0, b1 = 0, f = 0;
    double u_v = 0;
    double gap = 0;

    double psq(double nu) const {
        const double d = std::cos(nu) - u_v;
        return 2.0 * ((-c) * d * d + gap);
    }
    double at_u(double u) const {
        const double d = u - u_v;
        return (-c) * d * d + gap;
    }
    double min_over_circle() const {
        if (std::fabs(u_v) <= 1.0) return gap;
        return at_u(u_v > 0 ? 1.0 : -1.0);
    }
};

NuLeaf make_nu_leaf(const EulerParams& params, double f_lambda) {
    NuLeaf leaf;
    leaf.c = params.c;
    leaf.b1 = 1.0 - 2.0 * params.mu;
    leaf.f = f_lambda;
    leaf.u_v = -leaf.b1 / (2.0 * params.c);
    leaf.gap = leaf.b1 * leaf.b1 / (4.0 * params.c) - f_lambda;
    return leaf;
}

/// Builds the lambda leaf for a through-the-origin oscillation. Throws
/// NoTurningPoint when the oscillation interval is empty or collapsed.
LambdaLeaf make_lambda_leaf(const EulerParams& params, double f_lambda) {
    const double c = params.c;
    const double a0 = f_lambda + 1.0 + c;  // p_lambda^2(0) / 2
    if (a0 <= 0.0) {
        if (a0 > -1e-12)
            throw NoTurningPoint("degenerate torus: p_lambda^2(0) = 0 collapses the oscillation");
        throw NoTurningPoint("no turning point: p_lambda^2(0) < 0");
    }
    const double disc = 1.0 - 4.0 * c * f_lambda;
    if (disc <= 0.0)
        throw NoTurningPoint("no turning point: effective polynomial has no real root");
    const double s = std::sqrt(disc);

    LambdaLeaf leaf;
    leaf.c = c;
    leaf.f = f_lambda;
    leaf.x_hi = (1.0 + s) / (-2.0 * c);
    leaf.x_lo = (1.0 - s) / (-2.0 * c);
    // 1 - x_lo loses digits near the degenerate-oscillation boundary; the
    // rationalized form 2 a0 / (s + 1 + 2c) is exact there and valid whenever
    // its denominator is positive (always the case for c > -1/2).
    leaf.one_minus_xlo =
        (1.0 + 2.0 * c > 0.0) ? 2.0 * a0 / (s + 1.0 + 2.0 * c) : 1.0 - leaf.x_lo;
    leaf.lambda_max = std::acosh(leaf.x_hi);

    // Newton polish of the turning point on g = f + cosh + c cosh^2.
    for (int i = 0; i < 3; ++i) {
        const double ch = std::cosh(leaf.lambda_max), sh = std::sinh(leaf.lambda_max);
        const double g = f_lambda + ch + c * ch * ch;
        const double dg = sh * (1.0 + 2.0 * c * ch);
        if (std::fabs(dg) < 1e-14) break;
        leaf.lambda_max -= g / dg;
    }
    return leaf;
}

/// Quarter-period integrand after lambda = lambda_max sin(theta). The
/// endpoint cos(theta) factors cancel analytically:
///   d t / d theta = sqrt(2 lm (1 + sin theta)) / sqrt(W(theta) sinhc(u)),
/// with u = lm cos^2(theta) / (2 (1 + sin theta)) = (lm - lambda)/2 and
/// W = 4 (-c) (cosh(lambda) - x_lo) sinh((lm + lambda)/2).
double lambda_period_integrand(const LambdaLeaf& leaf, double theta) {
    const double lm = leaf.lambda_max;
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const double lam = lm * st;
    const double u = 0.5 * lm * ct * ct / (1.0 + st);
    const double sinhc = (u > 1e-8) ? std::sinh(u) / u : 1.0 + u * u / 6.0;
    const double w = 4.0 * (-leaf.c) * leaf.d_lo(lam) * std::sinh(0.5 * (lm + lam));
    return std::sqrt(2.0 * lm * (1.0 + st)) / std::sqrt(w * sinhc);
}

detail::CumTable lambda_quarter_table(const LambdaLeaf& leaf, double rel_tol) {
    LambdaLeaf copy = leaf;
    return detail::cumulative_integral(
        [copy](double theta) { return lambda_period_integrand(copy, theta); }, 0.0, 0.5 * kPi,
        rel_tol);
}

detail::CumTable nu_circuit_table(const NuLeaf& leaf, double rel_tol) {
    NuLeaf copy = leaf;
    return detail::cumulative_integral(
        [copy](double nu) { return 1.0 / std::sqrt(copy.psq(nu)); }, -kPi, kPi, rel_tol);
}

}  // namespace

void validate_params(const EulerParams& params) {
    if (!(params.mu > 0.0 && params.mu < 1.0))
        throw DomainError("mass ratio mu must lie in (0, 1), got " + fmt(params.mu));
    if (!(params.c < 0.0)) throw DomainError("energy c must be negative, got " + fmt(params.c));
}

double critical_energy(double mu) {
    if (!(mu > 0.0 && mu < 1.0))
        throw DomainError("mass ratio mu must lie in (0, 1), got " + fmt(mu));
    return -0.5 - std::sqrt(mu * (1.0 - mu));
}

const char* to_string(RegionLabel label) {
    switch (label) {
        case RegionLabel::P: return "P";
        case RegionLabel::L: return "L";
        case RegionLabel::S: return "S";
        case RegionLabel::Sprime: return "S'";
        case RegionLabel::NoMotion: return "NoMotion";
    }
    return "?";
}

double p_lambda_sq(const EulerParams& params, double f_lambda, double lambda) {
    const double ch = std::cosh(lambda);
    return 2.0 * (f_lambda + ch + params.c * ch * ch);
}

double p_nu_sq(const EulerParams& params, double f_lambda, double nu) {
    return make_nu_leaf(params, f_lambda).psq(nu);
}

RegionLabel classify_region(const EulerParams& params, double f_lambda, double boundary_tol) {
    validate_params(params);
    const double c = params.c;
    const double a0 = f_lambda + 1.0 + c;
    const double disc = 1.0 - 4.0 * c * f_lambda;

    // Degenerate leaves first: an oscillation collapsing at lambda = 0, or
    // turning points merging at the vertex of the effective polynomial.
    if (std::fabs(a0) < boundary_tol && disc > -boundary_tol)
        throw BoundaryRegion("boundary leaf: lambda oscillation degenerates at lambda = 0");
    if (std::fabs(disc) < boundary_tol && c >= -0.5 - boundary_tol)
        throw BoundaryRegion("boundary leaf: lambda turning points merge");

    enum class LambdaMotion { none, interval, annulus };
    LambdaMotion lambda_motion = LambdaMotion::none;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double x_hi = (1.0 + s) / (-2.0 * c);
        const double x_lo = (1.0 - s) / (-2.0 * c);
        if (x_hi > 1.0) {
            if (a0 > 0.0)
                lambda_motion = LambdaMotion::interval;
            else
                lambda_motion = (x_lo > 1.0) ? LambdaMotion::annulus : LambdaMotion::none;
        }
    }

    const NuLeaf nu = make_nu_leaf(params, f_lambda);
    const double q_at_m = nu.at_u(1.0);   // nu = 0 side (toward M)
    const double q_at_e = nu.at_u(-1.0);  // nu = pi side (toward E)
    const double q_min = nu.min_over_circle();

    if (lambda_motion != LambdaMotion::none) {
        if (std::fabs(q_min) < boundary_tol)
            throw BoundaryRegion("boundary leaf: nu circulation is critical");
        if (q_min < 0.0 && (std::fabs(q_at_m) < boundary_tol || std::fabs(q_at_e) < boundary_tol))
            throw BoundaryRegion("boundary leaf: nu confinement interval is critical");
    }

    if (lambda_motion == LambdaMotion::none) return RegionLabel::NoMotion;
    if (std::max(q_at_m, q_at_e) < 0.0) return RegionLabel::NoMotion;

    if (q_min > 0.0)
        return lambda_motion == LambdaMotion::interval ? RegionLabel::L : RegionLabel::P;
    if (q_at_m > 0.0 && q_at_e > 0.0) return RegionLabel::S;
    return RegionLabel::Sprime;
}

double lambda_turning_point(const EulerParams& params, double f_lambda) {
    validate_params(params);
    return make_lambda_leaf(params, f_lambda).lambda_max;
}

double period_lambda(const EulerParams& params, double f_lambda, double rel_tol) {
    validate_params(params);
    const LambdaLeaf leaf = make_lambda_leaf(params, f_lambda);
    return 4.0 * lambda_quarter_table(leaf, rel_tol).total();
}

double period_nu(const EulerParams& params, double f_lambda, double rel_tol) {
    validate_params(params);
    const NuLeaf leaf = make_nu_leaf(params, f_lambda);
    if (leaf.min_over_circle() <= 0.0)
        throw NotLemniscate("p_nu^2 is not positive on the whole circle (not a lemniscate leaf)");
    return nu_circuit_table(leaf, rel_tol).total();
}

LemniscateInterval lemniscate_interval(const EulerParams& params) {
    validate_params(params);
    const double c_j = critical_energy(params.mu);
    if (params.c <= c_j)
        throw DomainError("no lemniscate region: c = " + fmt(params.c) +
                          " is not above the critical value c_J = " + fmt(c_j));
    const double b1 = 1.0 - 2.0 * params.mu;
    const double f_lo = -1.0 - params.c;
    const double f_hi = (std::fabs(b1) <= -2.0 * params.c) ? b1 * b1 / (4.0 * params.c)
                                                           : -params.c - std::fabs(b1);
    return {f_lo, f_hi};
}

namespace {
double rotation_number_at(const EulerParams& params, double f, double rel_tol) {
    return period_nu(params, f, rel_tol) / period_lambda(params, f, rel_tol);
}
}  // namespace

TorusData find_torus(const EulerParams& params, int k, int l, double r_tol) {
    validate_params(params);
    if (k <= 0 || l <= 0) throw DomainError("k and l must be positive");
    if (std::gcd(k, l) != 1) throw DomainError("k and l must be coprime");
    const LemniscateInterval box = lemniscate_interval(params);
    const double span = box.f_hi - box.f_lo;
    const double target = static_cast<double>(k) / static_cast<double>(l);
    const double quad_tol = 1e-12;

    auto rot = [&](double f) { return rotation_number_at(params, f, quad_tol); };

    // Seed scan. R is continuous on the open interval but not known to be
    // monotone, so bracket first and bisect afterwards.
    constexpr int seeds = 64;
    std::vector<double> fs(seeds), rs(seeds);
    for (int i = 0; i < seeds; ++i) {
        fs[i] = box.f_lo + span * (i + 0.5) / seeds;
        rs[i] = rot(fs[i]);
    }

    double f_below = 0, f_above = 0;
    bool have = false;
    for (int i = 0; i + 1 < seeds && !have; ++i) {
        if ((rs[i] - target) * (rs[i + 1] - target) <= 0.0) {
            f_below = fs[i];
            f_above = fs[i + 1];
            have = true;
        }
    }
    if (!have) {
        // Push geometrically into whichever end the scan did not reach; the
        // rotation number diverges only logarithmically at the top end.
        const bool need_high = *std::max_element(rs.begin(), rs.end()) < target;
        double anchor = need_high ? fs[seeds - 1] : fs[0];
        double r_anchor = need_high ? rs[seeds - 1] : rs[0];
        double delta = span / (2.0 * seeds);
        while (!have) {
            delta *= 0.25;
            if (delta < 1e-15 * span)
                throw RotationNumberUnattainable(
                    "rotation number " + std::to_string(k) + "/" + std::to_string(l) +
                    " is not attained on the lemniscate slice at mu = " + fmt(params.mu) +
                    ", c = " + fmt(params.c));
            const double f = need_high ? box.f_hi - delta : box.f_lo + delta;
            double r;
            try {
                r = rot(f);
            } catch (const Error&) {
                // The probe degenerated numerically; the target rotation
                // number is out of reach on this slice.
                throw RotationNumberUnattainable(
                    "rotation number " + std::to_string(k) + "/" + std::to_string(l) +
                    " is out of numeric reach on the lemniscate slice at mu = " +
                    fmt(params.mu) + ", c = " + fmt(params.c));
            }
            if ((r - target) * (r_anchor - target) <= 0.0) {
                f_below = std::min(anchor, f);
                f_above = std::max(anchor, f);
                have = true;
            } else {
                anchor = f;
                r_anchor = r;
            }
        }
    }

    double lo = f_below, hi = f_above;
    double r_lo = rot(lo);
    double f_mid = 0.5 * (lo + hi), r_mid = 0;
    for (int iter = 0; iter < 200; ++iter) {
        f_mid = 0.5 * (lo + hi);
        r_mid = rot(f_mid);
        if (std::fabs(r_mid - target) <= r_tol) break;
        if ((r_lo - target) * (r_mid - target) <= 0.0) {
            hi = f_mid;
        } else {
            lo = f_mid;
            r_lo = r_mid;
        }
        if (hi - lo <= 1e-17 * span)
            throw RotationNumberUnattainable("bisection interval collapsed before |R - k/l| <= " +
                                             fmt(r_tol));
    }
    if (std::fabs(r_mid - target) > r_tol)
        throw RotationNumberUnattainable("rotation number bisection did not converge");

    TorusData torus;
    torus.k = k;
    torus.l = l;
    torus.params = params;
    torus.f_lambda = f_mid;
    torus.lambda_max = lambda_turning_point(params, f_mid);
    torus.T_lambda = period_lambda(params, f_mid, quad_tol);
    torus.T_nu = period_nu(params, f_mid, quad_tol);
    log_debug("find_torus(" + std::to_string(k) + "," + std::to_string(l) +
              "): f_lambda = " + fmt(f_mid) + ", R = " + fmt(torus.rotation_number()));
    return torus;
}

double energy_residual(const EulerParams& params, const EllipticState& s) {
    const double ch = std::cosh(s.lambda);
    const double cn = std::cos(s.nu);
    const double f_lam = 0.5 * s.p_lambda * s.p_lambda - ch - params.c * ch * ch;
    const double f_nu = 0.5 * s.p_nu * s.p_nu + (1.0 - 2.0 * params.mu) * cn + params.c * cn * cn;
    return f_lam + f_nu;
}

Vec2 elliptic_to_cartesian(double lambda, double nu) {
    return {std::cosh(lambda) * std::cos(nu), std::sinh(lambda) * std::sin(nu)};
}

// ---------------------------------------------------------------------------
// OrbitEvaluator: separated flows with invertible time tables.

struct OrbitEvaluator::Impl {
    TorusData torus;
    double phase = 0;
    LambdaLeaf lam_leaf;
    NuLeaf nu_leaf;
    detail::CumTable lam_quarter;  // theta in [0, pi/2] -> time
    detail::CumTable nu_circuit;   // nu in [-pi, pi] -> time
    double t_quarter = 0;          // T_lambda / 4
    double t_nu = 0;               // T_nu

    double lambda_period() const { return 4.0 * t_quarter; }
    double period() const { return torus.k * lambda_period(); }

    // lambda(t) with lambda(0) = 0 rising.
    void lambda_at(double t, double& lambda, double& p) const {
        const double tl = lambda_period();
        double tr = std::fmod(t, tl);
        if (tr < 0) tr += tl;
        int quadrant = std::min(static_cast<int>(tr / t_quarter), 3);
        const double tq = tr - quadrant * t_quarter;
        double theta, sign_lambda, sign_p;
        switch (quadrant) {
            case 0:  theta = lam_quarter.invert(tq);              sign_lambda = 1;  sign_p = 1;  break;
            case 1:  theta = lam_quarter.invert(t_quarter - tq);  sign_lambda = 1;  sign_p = -1; break;
            case 2:  theta = lam_quarter.invert(tq);              sign_lambda = -1; sign_p = -1; break;
            default: theta = lam_quarter.invert(t_quarter - tq);  sign_lambda = -1; sign_p = 1;  break;
        }
        const double al = lam_leaf.lambda_max * std::sin(theta);
        lambda = sign_lambda * al;
        p = sign_p * std::sqrt(std::max(lam_leaf.psq(al), 0.0));
    }

    // Unwrapped nu(t) with nu = -pi at t = -phase; strictly increasing.
    void nu_at(double t, double& nu, double& p) const {
        const double ts = t + phase;
        double cycles = std::floor(ts / t_nu);
        double tr = ts - cycles * t_nu;
        if (tr < 0) {
            tr += t_nu;
            cycles -= 1.0;
        }
        const double nu_base = nu_circuit.invert(tr);
        nu = nu_base + 2.0 * kPi * cycles;
        p = std::sqrt(std::max(nu_leaf.psq(nu_base), 0.0));
    }

    EllipticState state_at(double t) const {
        EllipticState s;
        lambda_at(t, s.lambda, s.p_lambda);
        nu_at(t, s.nu, s.p_nu);
        return s;
    }
};

OrbitEvaluator::OrbitEvaluator(const TorusData& torus, double phase, double rel_tol) {
    validate_params(torus.params);
    auto impl = std::make_shared<Impl>();
    impl->torus = torus;
    impl->phase = phase;
    impl->lam_leaf = make_lambda_leaf(torus.params, torus.f_lambda);
    impl->nu_leaf = make_nu_leaf(torus.params, torus.f_lambda);
    if (impl->nu_leaf.min_over_circle() <= 0.0)
        throw NotLemniscate("torus leaf is not of lemniscate type");
    impl->lam_quarter = lambda_quarter_table(impl->lam_leaf, rel_tol);
    impl->nu_circuit = nu_circuit_table(impl->nu_leaf, rel_tol);
    impl->t_quarter = impl->lam_quarter.total();
    impl->t_nu = impl->nu_circuit.total();
    impl_ = std::move(impl);
}

double OrbitEvaluator::period() const { return impl_->period(); }

EllipticState OrbitEvaluator::state_at(double t) const { return impl_->state_at(t); }

Vec2 OrbitEvaluator::q_at(double t) const {
    const EllipticState s = impl_->state_at(t);
    return elliptic_to_cartesian(s.lambda, s.nu);
}

double OrbitEvaluator::phase_time_of_nu(double nu) const {
    return impl_->nu_circuit.value(nu) - impl_->phase;
}

double generic_phase(const TorusData& torus) { return torus.T_nu / (4.0 * torus.l); }

// ---------------------------------------------------------------------------
// Tracing.

namespace {

class TraceBuilder {
public:
    TraceBuilder(const OrbitEvaluator& eval, double scale, std::vector<double> marker_times)
        : eval_(eval), scale_(scale), marker_times_(std::move(marker_times)) {}

    bool near_marker_time(double t, double span) const {
        for (double m : marker_times_)
            if (std::fabs(t - m) < 1e-12 * span) return true;
        return false;
    }

    void segment(double ta, const EllipticState& sa, Vec2 qa, double tb, const EllipticState& sb,
                 Vec2 qb, int depth) {
        if (depth >= 42) {
            emit(ta, sa, qa);
            return;
        }
        const double tm = 0.5 * (ta + tb);
        const EllipticState sm = eval_.state_at(tm);
        const Vec2 qm = elliptic_to_cartesian(sm.lambda, sm.nu);
        if (needs_split(qa, qb, qm)) {
            segment(ta, sa, qa, tm, sm, qm, depth + 1);
            segment(tm, sm, qm, tb, sb, qb, depth + 1);
        } else {
            emit(ta, sa, qa);
        }
    }

    std::vector<double> times;
    std::vector<EllipticState> states;
    std::vector<Vec2> points;

private:
    void emit(double t, const EllipticState& s, Vec2 q) {
        times.push_back(t);
        states.push_back(s);
        points.push_back(q);
    }

    static double subtended_angle(Vec2 a, Vec2 b, Vec2 p) {
        const Vec2 u = a - p, v = b - p;
        if (norm2(u) == 0.0 || norm2(v) == 0.0) return 0.0;
        return std::fabs(std::atan2(cross(u, v), dot(u, v)));
    }

    double primary_distance(Vec2 q) const {
        return std::min(dist(q, Vec2{-1.0, 0.0}), dist(q, Vec2{1.0, 0.0}));
    }

    bool needs_split(Vec2 qa, Vec2 qb, Vec2 qm) const {
        if (dist(qa, qb) < 1e-10 * scale_) return false;
        for (Vec2 p : {Vec2{-1.0, 0.0}, Vec2{1.0, 0.0}}) {
            if (std::min(dist(qa, p), dist(qb, p)) > 1e-11 && subtended_angle(qa, qb, p) > 0.1)
                return true;
        }
        double dev_tol = 1e-6 * scale_;
        if (!marker_times_.empty()) {
            // Collision cusps need locally much tighter chords: the two cusp
            // branches hug each other and sampling error must stay well below
            // their separation.
            dev_tol = std::min(dev_tol, std::max(1e-4 * primary_distance(qm), 1e-9));
        }
        return dist(qm, (qa + qb) * 0.5) > dev_tol;
    }

    const OrbitEvaluator& eval_;
    double scale_;
    std::vector<double> marker_times_;
};

OrbitTrace trace_core(const TorusData& torus, const OrbitEvaluator& eval, double phase,
                      double t_end, int base_samples, const std::vector<double>& marker_times,
                      bool allow_collision, double collision_guard, bool open_arc = false) {
    TraceBuilder builder(eval, std::cosh(torus.lambda_max), marker_times);

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(base_samples) + marker_times.size() + 1);
    for (int i = 0; i < base_samples; ++i) grid.push_back(t_end * i / base_samples);
    for (double m : marker_times)
        if (m < t_end) grid.push_back(m);
    grid.push_back(t_end);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [&](double a, double b) { return std::fabs(a - b) < 1e-13 * t_end; }),
               grid.end());

    auto snapped_state = [&](double t) {
        EllipticState s = eval.state_at(t);
        if (builder.near_marker_time(t, t_end)) {
            // Collisions sit exactly at lambda = 0, nu = multiple of pi.
            s.lambda = 0.0;
            s.nu = kPi * std::round(s.nu / kPi);
        }
        return s;
    };

    std::vector<EllipticState> grid_states(grid.size());
    std::vector<Vec2> grid_points(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid_states[i] = snapped_state(grid[i]);
        grid_points[i] = elliptic_to_cartesian(grid_states[i].lambda, grid_states[i].nu);
    }

    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        builder.segment(grid[i], grid_states[i], grid_points[i], grid[i + 1], grid_states[i + 1],
                        grid_points[i + 1], 0);

    OrbitTrace trace;
    trace.torus = torus;
    trace.phase = phase;
    trace.t_end = t_end;
    trace.evaluator = eval;
    trace.times = std::move(builder.times);
    trace.states = std::move(builder.states);
    trace.curve.points = std::move(builder.points);
    if (open_arc) {
        // The geometric image ends at t_end; keep the endpoint sample.
        trace.times.push_back(grid.back());
        trace.states.push_back(grid_states.back());
        trace.curve.points.push_back(grid_points.back());
        trace.curve.is_closed = false;
        trace.closure_error = 0.0;
    } else {
        trace.closure_error = dist(grid_points.back(), trace.curve.points.front());
    }

    for (double m : marker_times) {
        if (m >= t_end && !open_arc) continue;
        const auto it =
            std::lower_bound(trace.times.begin(), trace.times.end(), m - 1e-12 * t_end);
        if (it != trace.times.end())
            trace.curve.markers.push_back(static_cast<std::size_t>(it - trace.times.begin()));
    }
    std::sort(trace.curve.markers.begin(), trace.curve.markers.end());

    if (!allow_collision) {
        for (const Vec2& q : trace.curve.points) {
            if (dist(q, torus.params.earth()) < collision_guard ||
                dist(q, torus.params.moon()) < collision_guard)
                throw CollisionOnTrace("generic trace passes within " + fmt(collision_guard) +
                                       " of a primary; adjust the phase");
        }
    }
    if (trace.curve.points.size() > 2'000'000)
        throw NumericError("trace refinement exploded; orbit too close to a singular configuration");
    return trace;
}

}  // namespace

OrbitTrace trace_orbit(const TorusData& torus, double phase, int samples_per_period,
                       bool allow_collision, double collision_guard) {
    if (samples_per_period < 64) throw DomainError("samples_per_period must be >= 64");
    OrbitEvaluator eval(torus, phase);
    const double t_end = eval.period();
    int n = samples_per_period * std::max(torus.k, torus.l);
    if (n % 2 != 0) ++n;
    return trace_core(torus, eval, phase, t_end, n, {}, allow_collision, collision_guard);
}

OrbitTrace collision_orbit(const TorusData& torus, int which, int samples_per_period) {
    if (samples_per_period < 64) throw DomainError("samples_per_period must be >= 64");
    if (which != 0 && which != 1) throw DomainError("collision orbit selector must be 0 or 1");

    if (torus.l % 2 != 0) {
        // Two type-II orbits related by reflection across the q1-axis. Both
        // effective potentials are even about the collision configuration, so
        // the orbit retraces itself after the second collision: the geometric
        // image is the open arc from E (t = 0) to M (t = T/2), covered twice
        // per period.
        OrbitEvaluator eval(torus, 0.0);
        const double t_half = 0.5 * eval.period();
        int n = samples_per_period * std::max(torus.k, torus.l) / 2;
        if (n % 2 != 0) ++n;
        OrbitTrace trace =
            trace_core(torus, eval, 0.0, t_half, n, {0.0, t_half}, true, 0.0, true);
        if (which == 1) {
            for (Vec2& p : trace.curve.points) p.y = -p.y;
            for (EllipticState& s : trace.states) {
                s.nu = -s.nu;
                s.p_nu = -s.p_nu;
            }
        }
        return trace;
    }

    // l even: q1-symmetric type-I orbit. The full period covers its point set
    // twice, so half a period already closes the curve at the colliding
    // primary (E for which = 0, M for which = 1).
    OrbitEvaluator probe(torus, 0.0);
    const double phase = (which == 0) ? 0.0 : probe.phase_time_of_nu(0.0);
    OrbitEvaluator eval = (which == 0) ? probe : OrbitEvaluator(torus, phase);
    const double t_half = 0.5 * eval.period();
    int n = samples_per_period * std::max(torus.k, torus.l) / 2;
    if (n % 2 != 0) ++n;
    return trace_core(torus, eval, phase, t_half, n, {0.0}, true, 0.0);
}

}  // namespace twocenter
