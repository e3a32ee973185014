#include <doctest.h>

#include <cmath>

#include "test_curves.hpp"
#include "twocenter/invariants.hpp"
#include "twocenter/model_curve.hpp"

using namespace twocenter;

TEST_CASE("closed-form invariants at the worked pairs") {
    const InvariantSet t32 = theorem_formulas(3, 2);
    CHECK(t32.j0 == HalfInteger::from_int(4));
    CHECK(t32.jE == HalfInteger::from_int(1));
    CHECK(t32.jM == HalfInteger::from_int(1));
    CHECK(t32.n == 2);
    CHECK(t32.jEM == 0);

    const InvariantSet t23 = theorem_formulas(2, 3);
    CHECK(t23.j0 == HalfInteger::from_int(5));
    CHECK(t23.jE == HalfInteger::from_int(9));
    CHECK(t23.n == 3);
    CHECK(t23.jEM == 2);

    const InvariantSet t11 = theorem_formulas(1, 1);
    CHECK(t11.j0 == HalfInteger::from_int(1));
    CHECK(t11.jE == HalfInteger::from_int(1));
    CHECK(t11.n == 1);
    CHECK(t11.jEM == 0);

    CHECK_THROWS_AS(theorem_formulas(2, 4), DomainError);
}

TEST_CASE("self-intersection formula") {
    CHECK(selfintersection_formula(3, 2) == 1);
    CHECK(selfintersection_formula(7, 5) == 14);
    CHECK(selfintersection_formula(1, 1) == 0);
    CHECK_THROWS_AS(selfintersection_formula(2, 2), DomainError);
}

TEST_CASE("distinguished orbit j0 values and consistency with Theorem") {
    CHECK(distinguished_j0(DistinguishedKind::brake_brake, 0) == HalfInteger::from_int(0));
    CHECK(distinguished_j0(DistinguishedKind::brake_collision, 3) ==
          HalfInteger::from_doubled(13));

    // Collision-collision orbits reproduce j0 = kl - k + 1 via their counts.
    for (auto [k, l] : {std::pair{3, 2}, {1, 2}, {5, 4}}) {
        const auto n_self = selfintersection_formula(k, l);
        CHECK(distinguished_j0(DistinguishedKind::collision_type_I, n_self) ==
              theorem_formulas(k, l).j0);
    }
    for (auto [k, l] : {std::pair{2, 3}, {1, 1}, {4, 5}}) {
        const auto n_self = selfintersection_formula(k, l);
        CHECK(distinguished_j0(DistinguishedKind::collision_type_II, n_self) ==
              theorem_formulas(k, l).j0);
    }
}

TEST_CASE("covering formula route to jEM") {
    // Degree 2 over the circle with n_lift = kl - k = 3 (k = 3, l = 2).
    CHECK(covering_jplus_check(2, 0, 0, 3) == 0);
    // Degree 3, k = 2: raw value -4, i.e. 2 mod 6.
    CHECK(covering_jplus_check(3, 0, 0, 4) == -4);
    CHECK(canonical_mod(-4, 6) == 2);
    // Degree 1 reduces to J+ + (n_lift - n_base).
    CHECK(covering_jplus_check(1, 7, 2, 5) == 7 + 3);

    for (auto [k, l] : {std::pair{3, 2}, {2, 3}, {4, 5}, {5, 1}, {1, 5}}) {
        const std::int64_t via_cover =
            covering_jplus_check(l, 0, 0, static_cast<std::int64_t>(k) * l - k);
        CHECK(canonical_mod(via_cover, 2 * l) == theorem_formulas(k, l).jEM);
    }
}

TEST_CASE("j0 of a curve avoiding both primaries is plain J+") {
    const EulerParams params{0.5, -0.5};
    const ClosedCurve small = test_curves::circle({0.0, 1.2}, 0.3);
    CHECK(j0_numeric(small, params) == HalfInteger::from_int(0));
}

TEST_CASE("jEM with n = 0 stays the raw lift J+") {
    // A small loop around E: the lift does not wind the origin.
    const ClosedCurve curve = test_curves::circle({-1.0, 0.0}, 0.4, 512);
    const JEMResult jem = jEM_numeric(curve);
    CHECK(jem.n == 0);
    CHECK(jem.jEM == jem.raw_jplus);
    CHECK(jem.jEM == 0);
}

TEST_CASE("half integer arithmetic") {
    const HalfInteger a = HalfInteger::from_doubled(5);  // 5/2
    CHECK(!a.is_integer());
    CHECK_THROWS_AS(a.as_integer(), NumericError);
    CHECK((a + a).as_integer() == 5);
    CHECK(a.str() == "5/2");
    CHECK(HalfInteger::from_int(-3).str() == "-3");
}

TEST_CASE("model curve reproduces the collision-orbit Birkhoff combinatorics") {
    for (auto [k, l] : {std::pair{3, 2}, {5, 2}, {3, 4}, {5, 4}}) {
        const ClosedCurve model = birkhoff_model_curve(k, l);
        const auto doubles = find_double_points(model);
        CHECK(static_cast<std::int64_t>(doubles.size()) ==
              static_cast<std::int64_t>(k) * l - k);
        const std::int64_t jplus = viro_jplus(build_arrangement(model, doubles));
        CHECK(canonical_mod(jplus, 2 * l) == theorem_formulas(k, l).jEM);
        CHECK(std::abs(winding_number(model, {0, 0})) == l);
    }
    CHECK_THROWS_AS(birkhoff_model_curve(2, 3), DomainError);
    CHECK_THROWS_AS(birkhoff_model_curve(1, 2), DomainError);
}

TEST_CASE("T_{3,2}: numeric pipeline reproduces the known invariant set") {
    const EulerParams params{0.5, -0.5};
    const TorusData torus = find_torus(params, 3, 2);
    const OrbitTrace trace = trace_orbit(torus, generic_phase(torus), 512);
    const CurveInvariants inv = compute_curve_invariants(trace.curve, params);

    CHECK(inv.w_e == 0);
    CHECK(inv.w_m == 0);
    CHECK(inv.base.jplus == 4);
    CHECK(inv.set.j0 == HalfInteger::from_int(4));
    CHECK(inv.set.jE == HalfInteger::from_int(1));
    CHECK(inv.set.jM == HalfInteger::from_int(1));
    CHECK(inv.set.n == 2);
    CHECK(inv.set.jEM == 0);
    // Intermediate arithmetic of the generic representative.
    CHECK(inv.base.double_points == 9);
    CHECK(inv.base.sum_w_sq == 6);
    CHECK(inv.base.sum_ind_sq == HalfInteger::from_int(0));
}

TEST_CASE("T_{2,3}: numeric pipeline reproduces the known invariant set") {
    const EulerParams params{0.5, -0.5};
    const TorusData torus = find_torus(params, 2, 3);
    const OrbitTrace trace = trace_orbit(torus, generic_phase(torus), 512);
    const CurveInvariants inv = compute_curve_invariants(trace.curve, params);

    CHECK(inv.set.j0 == HalfInteger::from_int(5));
    CHECK(inv.set.jE == HalfInteger::from_int(9));
    CHECK(inv.set.jM == HalfInteger::from_int(9));
    CHECK(inv.set.n == 3);
    CHECK(inv.set.jEM == 2);
    CHECK(inv.birkhoff.jplus == -4);
    // l odd: both base windings odd, jE = 2 j0 - 1.
    CHECK(std::abs(inv.w_e) % 2 == 1);
    CHECK(std::abs(inv.w_m) % 2 == 1);
    CHECK(inv.set.jE == HalfInteger::from_doubled(2 * inv.set.j0.doubled - 2));
}

TEST_CASE("verify_torus end to end") {
    SUBCASE("symmetric masses") {
        const VerificationReport report = verify_torus({0.5, -0.5}, 3, 2);
        for (const CheckEntry& check : report.checks) {
            INFO(check.name, ": ", check.detail);
            CHECK(check.pass);
        }
        CHECK(report.all_pass());
        CHECK(report.numeric == report.closed_form);
    }
    SUBCASE("asymmetric masses") {
        const double c = 0.5 * critical_energy(0.3);
        const VerificationReport report = verify_torus({0.3, c}, 2, 3);
        for (const CheckEntry& check : report.checks) {
            INFO(check.name, ": ", check.detail);
            CHECK(check.pass);
        }
        CHECK(report.all_pass());
    }
    SUBCASE("non-coprime pair short-circuits") {
        const VerificationReport report = verify_torus({0.5, -0.5}, 2, 4);
        REQUIRE(report.checks.size() == 1);
        CHECK_FALSE(report.checks[0].pass);
        CHECK_FALSE(report.all_pass());
    }
}

TEST_CASE("phase independence of the invariant set") {
    const EulerParams params{0.5, -0.5};
    const TorusData torus = find_torus(params, 3, 2);
    const double base = generic_phase(torus);
    InvariantSet first;
    bool have_first = false;
    for (double factor : {1.0, 0.62, 1.34}) {
        const OrbitTrace trace = trace_orbit(torus, base * factor, 384);
        const CurveInvariants inv = compute_curve_invariants(trace.curve, params);
        if (!have_first) {
            first = inv.set;
            have_first = true;
        } else {
            CHECK(inv.set == first);
        }
    }
}
