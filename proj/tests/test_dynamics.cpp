#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "twocenter/dynamics.hpp"
#include "twocenter/topology.hpp"

using namespace twocenter;

namespace {
constexpr double kPi = 3.14159265358979323846;

double lambda_oracle_integrand(const EulerParams& p, double f, double lambda_max, double theta) {
    const double lam = lambda_max * std::sin(theta);
    return lambda_max * std::cos(theta) / std::sqrt(p_lambda_sq(p, f, lam));
}

// Oracle lambda period: Simpson on the sin-substituted integrand away from
// the endpoint plus the analytic tail; the integrand tends to
// sqrt(2 lm / D) at theta = pi/2 with D = -d(p_lambda^2)/d(lambda) there.
double oracle_period_lambda(const EulerParams& p, double f, double lambda_max, int panels,
                            double delta) {
    auto g = [&](double theta) { return lambda_oracle_integrand(p, f, lambda_max, theta); };
    const double d_at_max =
        -2.0 * std::sinh(lambda_max) * (1.0 + 2.0 * p.c * std::cosh(lambda_max));
    const double tail = std::sqrt(2.0 * lambda_max / d_at_max) * delta;
    return 4.0 * (oracles::simpson(g, 0.0, 0.5 * kPi - delta, panels) + tail);
}
}  // namespace

TEST_CASE("critical energy formula") {
    CHECK(critical_energy(0.5) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(critical_energy(1e-15) == doctest::Approx(-0.5).epsilon(1e-7));
    CHECK(critical_energy(0.3) == doctest::Approx(-0.958257569495584).epsilon(1e-12));
    CHECK_THROWS_AS(critical_energy(0.0), DomainError);
    CHECK_THROWS_AS(critical_energy(1.0), DomainError);
    CHECK_THROWS_AS(critical_energy(-0.2), DomainError);
}

TEST_CASE("classify_region: below the critical energy nothing is L or P") {
    const EulerParams params{0.5, -1.5};
    for (int i = 0; i <= 60; ++i) {
        const double f = -3.0 + 6.0 * i / 60;
        RegionLabel label;
        try {
            label = classify_region(params, f);
        } catch (const BoundaryRegion&) {
            continue;
        }
        CHECK(label != RegionLabel::L);
        CHECK(label != RegionLabel::P);
    }
}

TEST_CASE("classify_region: L leaf agrees with the sign-analysis oracle") {
    const EulerParams params{0.5, -0.5};
    const double f = -0.35;
    CHECK(classify_region(params, f) == RegionLabel::L);

    // Oracle: sample both effective polynomials on fine grids.
    bool positive_at_zero = p_lambda_sq(params, f, 0.0) > 0;
    bool has_root = false;
    double prev = p_lambda_sq(params, f, 0.0);
    for (int i = 1; i <= 20000; ++i) {
        const double lam = 10.0 * i / 20000;
        const double val = p_lambda_sq(params, f, lam);
        if (prev > 0 && val <= 0) has_root = true;
        prev = val;
    }
    bool nu_positive_everywhere = true;
    for (int i = 0; i <= 20000; ++i) {
        const double nu = 2 * kPi * i / 20000;
        if (p_nu_sq(params, f, nu) <= 0) nu_positive_everywhere = false;
    }
    CHECK(positive_at_zero);
    CHECK(has_root);
    CHECK(nu_positive_everywhere);
}

TEST_CASE("classify_region: other regions and degenerate leaves") {
    // No real lambda motion at all once f is far too negative.
    CHECK(classify_region({0.5, -0.5}, -5.0) == RegionLabel::NoMotion);
    // S: nu confined around both primaries (symmetric masses).
    CHECK(classify_region({0.5, -1.5}, 1.0) == RegionLabel::S);
    // S': only the heavier primary keeps an admissible neighborhood.
    CHECK(classify_region({0.3, -1.5}, 1.5) == RegionLabel::Sprime);
    // P: annular lambda motion with circulating nu.
    CHECK(classify_region({0.5, -0.3}, -0.75) == RegionLabel::P);
    // Boundary leaf: oscillation degenerates at lambda = 0.
    CHECK_THROWS_AS(classify_region({0.5, -0.5}, -0.5), BoundaryRegion);
}

TEST_CASE("lambda_turning_point: constructed root and degenerate errors") {
    const double c = -0.5;
    const double f = -(std::cosh(1.0) + c * std::cosh(1.0) * std::cosh(1.0));
    CHECK(lambda_turning_point({0.5, c}, f) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(lambda_turning_point({0.5, -0.5}, -0.5),
                         doctest::Contains("degenerate torus"), NoTurningPoint);
    // Negative discriminant: the effective polynomial never vanishes.
    CHECK_THROWS_AS(lambda_turning_point({0.5, -0.6}, -0.55), NoTurningPoint);
}

TEST_CASE("lambda_turning_point matches a bisection oracle") {
    const EulerParams params{0.5, -0.6};
    const double f = -0.35;
    auto g = [&](double lam) {
        const double ch = std::cosh(lam);
        return f + ch + params.c * ch * ch;
    };
    const double from_oracle = oracles::bisect(g, 0.0, 20.0, 1e-14);
    const double impl = lambda_turning_point(params, f);
    CHECK(impl == doctest::Approx(from_oracle).epsilon(1e-12));
    CHECK(impl == doctest::Approx(0.56961810003669267).epsilon(1e-12));
}

TEST_CASE("period_lambda: value, symmetry use, and step-halving stability") {
    const EulerParams params{0.5, -0.5};
    const double f = -(std::cosh(1.0) - 0.5 * std::cosh(1.0) * std::cosh(1.0));
    const double lambda_max = lambda_turning_point(params, f);
    CHECK(lambda_max == doctest::Approx(1.0).epsilon(1e-12));

    const double t_impl = period_lambda(params, f);

    // The integrand is even in lambda, so the full-range oracle integral
    // equals twice the half-range one the implementation exploits.
    auto integrand = [&](double theta) { return lambda_oracle_integrand(params, f, lambda_max, theta); };
    const double delta = 1e-4;
    const double half = oracles::simpson(integrand, 0.0, 0.5 * kPi - delta, 1 << 14);
    const double full =
        oracles::simpson(integrand, -0.5 * kPi + delta, 0.5 * kPi - delta, 1 << 15);
    CHECK(full == doctest::Approx(2.0 * half).epsilon(1e-10));

    // Oracle cross-checked at two resolutions and two endpoint offsets.
    const double t_oracle = oracle_period_lambda(params, f, lambda_max, 1 << 15, 1e-4);
    const double t_oracle2 = oracle_period_lambda(params, f, lambda_max, 1 << 16, 2e-4);
    CHECK(t_oracle == doctest::Approx(t_oracle2).epsilon(1e-11));
    CHECK(t_impl == doctest::Approx(t_oracle).epsilon(1e-10));

    // Frozen oracle value.
    CHECK(t_impl == doctest::Approx(9.5177110093247865).epsilon(1e-10));

    // Halving the quadrature tolerance must not move the value.
    const double t_tight = period_lambda(params, f, 1e-13);
    CHECK(std::fabs(t_tight - t_impl) / t_impl < 1e-10);
}

TEST_CASE("period_nu: symmetric integrand, frozen value, integrand peak") {
    const EulerParams params{0.5, -0.5};
    const double f = -1.2;
    const double t_impl = period_nu(params, f);

    auto integrand = [&](double nu) { return 1.0 / std::sqrt(p_nu_sq(params, f, nu)); };
    // mu = 1/2 removes the odd term: the full circuit is twice the half.
    const double half = oracles::trapezoid_periodic(integrand, 0.0, kPi, 1 << 19);
    const double full = oracles::trapezoid_periodic(integrand, -kPi, kPi, 1 << 20);
    CHECK(full == doctest::Approx(2.0 * half).epsilon(1e-12));
    CHECK(t_impl == doctest::Approx(full).epsilon(1e-10));
    CHECK(t_impl == doctest::Approx(3.7105196419062194).epsilon(1e-10));

    // Integrand peak sits where the effective potential is minimal.
    const EulerParams asym{0.3, -0.5};
    auto b_pot = [&](double nu) { return p_nu_sq(asym, -1.2, nu); };
    const double argmin = oracles::grid_argmin(b_pot, 0.0, 2 * kPi, 1 << 20);
    const double expected = std::acos((1.0 - 2.0 * asym.mu) / (2.0 * asym.c) * -1.0);
    CHECK(std::min(std::fabs(argmin - expected), std::fabs(argmin - (2 * kPi - expected))) <
          1e-5);
}

TEST_CASE("find_torus: consistency, oracle value, gcd precondition") {
    const EulerParams params{0.5, -0.5};
    const TorusData torus = find_torus(params, 3, 2);

    CHECK(torus.k == 3);
    CHECK(torus.l == 2);
    // Re-verify R from independently recomputed periods.
    const double t_lam = period_lambda(params, torus.f_lambda, 1e-13);
    const double t_nu = period_nu(params, torus.f_lambda, 1e-13);
    CHECK(t_nu / t_lam == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(torus.lambda_max > 0);
    CHECK(p_lambda_sq(params, torus.f_lambda, torus.lambda_max) ==
          doctest::Approx(0.0).epsilon(1e-10));
    CHECK(p_lambda_sq(params, torus.f_lambda, 0.5 * torus.lambda_max) > 0);

    // Oracle: bisection on R(f) built from the oracle quadratures.
    auto rotation = [&](double f) {
        const double lm = oracles::bisect(
            [&](double lam) {
                const double ch = std::cosh(lam);
                return f + ch + params.c * ch * ch;
            },
            1e-12, 20.0, 1e-15);
        const double t_l = oracle_period_lambda(params, f, lm, 1 << 13, 1e-4);
        auto nu_int = [&](double nu) { return 1.0 / std::sqrt(p_nu_sq(params, f, nu)); };
        const double t_n = oracles::trapezoid_periodic(nu_int, -kPi, kPi, 1 << 17);
        return t_n / t_l;
    };
    const double f_oracle =
        oracles::bisect([&](double f) { return rotation(f) - 1.5; }, -0.45, -1e-5, 2e-13);
    CHECK(torus.f_lambda == doctest::Approx(f_oracle).epsilon(1e-8));
    CHECK(torus.f_lambda == doctest::Approx(-0.041881089603762328).epsilon(1e-8));

    CHECK_THROWS_AS(find_torus(params, 2, 4), DomainError);
}

TEST_CASE("find_torus: unattainable rotation number is reported") {
    CHECK_THROWS_AS(find_torus({0.5, -0.5}, 97, 1), RotationNumberUnattainable);
}

TEST_CASE("elliptic coordinate map corner cases") {
    CHECK(elliptic_to_cartesian(0.0, kPi).x == doctest::Approx(-1.0));
    CHECK(elliptic_to_cartesian(0.0, kPi).y == doctest::Approx(0.0));
    CHECK(elliptic_to_cartesian(0.0, 0.0).x == doctest::Approx(1.0));
    const Vec2 up = elliptic_to_cartesian(0.7, 0.5 * kPi);
    CHECK(up.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(up.y == doctest::Approx(std::sinh(0.7)).epsilon(1e-15));
}

TEST_CASE("trace_orbit: closure, bounds, monotone nu, collision guard") {
    const TorusData torus = find_torus({0.5, -0.5}, 3, 2);
    const OrbitTrace trace = trace_orbit(torus, generic_phase(torus), 256);

    CHECK(trace.closure_error < 1e-8);
    double max_lambda = 0;
    for (const EllipticState& s : trace.states) max_lambda = std::max(max_lambda, std::fabs(s.lambda));
    CHECK(max_lambda <= torus.lambda_max + 1e-9);
    for (std::size_t i = 0; i + 1 < trace.states.size(); ++i)
        CHECK(trace.states[i + 1].nu > trace.states[i].nu);

    // Energy relation against finite-difference momenta from the evaluator.
    const double h = 1e-3;
    double worst = 0;
    for (int i = 0; i < 64; ++i) {
        const double t = trace.t_end * (i + 0.4) / 64;
        auto lam = [&](double tt) { return trace.evaluator.state_at(tt).lambda; };
        auto nu = [&](double tt) { return trace.evaluator.state_at(tt).nu; };
        EllipticState s = trace.evaluator.state_at(t);
        s.p_lambda = (-lam(t + 2 * h) + 8 * lam(t + h) - 8 * lam(t - h) + lam(t - 2 * h)) / (12 * h);
        s.p_nu = (-nu(t + 2 * h) + 8 * nu(t + h) - 8 * nu(t - h) + nu(t - 2 * h)) / (12 * h);
        worst = std::max(worst, std::fabs(energy_residual(torus.params, s)));
    }
    CHECK(worst < 1e-8);

    // The collision phase must trip the guard on a generic trace.
    CHECK_THROWS_AS(trace_orbit(torus, 0.0, 256), CollisionOnTrace);
}

TEST_CASE("collision_orbit: types, markers, reflection symmetry") {
    SUBCASE("l odd: type II, collisions at both primaries") {
        const TorusData torus = find_torus({0.5, -0.5}, 2, 3);
        const OrbitTrace orbit = collision_orbit(torus, 0, 256);
        // The orbit bounces at each collision: its image is the open arc from
        // E to M, covered twice over the full period.
        CHECK_FALSE(orbit.curve.is_closed);
        REQUIRE(orbit.curve.markers.size() == 2);
        CHECK(orbit.curve.markers[0] == 0);
        CHECK(orbit.curve.markers[1] == orbit.curve.points.size() - 1);
        const Vec2 first = orbit.curve.points[orbit.curve.markers[0]];
        const Vec2 second = orbit.curve.points[orbit.curve.markers[1]];
        CHECK(dist(first, Vec2{-1, 0}) < 1e-12);
        CHECK(dist(second, Vec2{1, 0}) < 1e-12);

        // The selector's twin is the q1-axis mirror image.
        const OrbitTrace twin = collision_orbit(torus, 1, 256);
        ClosedCurve mirrored = orbit.curve;
        for (Vec2& p : mirrored.points) p.y = -p.y;
        CHECK(hausdorff_distance(twin.curve, mirrored) < 1e-9);
    }
    SUBCASE("l even: type I at one primary, q1-symmetric") {
        const TorusData torus = find_torus({0.5, -0.5}, 3, 2);
        const OrbitTrace at_e = collision_orbit(torus, 0, 256);
        REQUIRE(at_e.curve.markers.size() == 1);
        CHECK(dist(at_e.curve.points[at_e.curve.markers[0]], Vec2{-1, 0}) < 1e-12);
        ClosedCurve mirrored = at_e.curve;
        for (Vec2& p : mirrored.points) p.y = -p.y;
        CHECK(hausdorff_distance(at_e.curve, mirrored) < 1e-6);

        const OrbitTrace at_m = collision_orbit(torus, 1, 256);
        CHECK(dist(at_m.curve.points[at_m.curve.markers[0]], Vec2{1, 0}) < 1e-12);

        // Closed-form count: the (3,2) collision orbit has one double point.
        IntersectOptions opts;
        opts.exclude_points = {Vec2{-1, 0}, Vec2{1, 0}};
        opts.exclude_radius = 1e-6;
        CHECK(find_double_points(at_e.curve, opts).size() == 1);
    }
    SUBCASE("(1,1): the collision orbit is embedded") {
        const TorusData torus = find_torus({0.5, -0.5}, 1, 1);
        const OrbitTrace orbit = collision_orbit(torus, 0, 256);
        IntersectOptions opts;
        opts.exclude_points = {Vec2{-1, 0}, Vec2{1, 0}};
        opts.exclude_radius = 1e-6;
        CHECK(find_double_points(orbit.curve, opts).empty());
    }
}

TEST_CASE("rotation number consistency under refined quadrature") {
    const EulerParams params{0.3, 0.5 * -0.958257569495584};
    const TorusData torus = find_torus(params, 2, 3);
    const double r1 = torus.rotation_number();
    const double r2 = period_nu(params, torus.f_lambda, 1e-14) /
                      period_lambda(params, torus.f_lambda, 1e-14);
    CHECK(std::fabs(r1 - r2) < 1e-9);
}
