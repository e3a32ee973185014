#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twocenter/curve.hpp"
#include "twocenter/dynamics.hpp"
#include "twocenter/half_integer.hpp"
#include "twocenter/lift.hpp"
#include "twocenter/topology.hpp"

namespace twocenter {

/// The four Cieliebak-Frauenfelder-Zhao invariants of an orbit. jEM is kept
/// as the canonical representative in [0, 2n) when n > 0 and as the raw J+
/// value of the lift when n = 0.
struct InvariantSet {
    HalfInteger j0;
    HalfInteger jE;
    HalfInteger jM;
    std::int64_t n = 0;
    std::int64_t jEM = 0;

    bool operator==(const InvariantSet& o) const = default;
    std::string str() const;
};

/// Intermediate quantities of one Viro evaluation, mirroring the worked
/// arithmetic J+ = 1 + #D - sum w^2 + sum ind^2.
struct ViroBreakdown {
    std::int64_t double_points = 0;
    std::int64_t sum_w_sq = 0;
    HalfInteger sum_ind_sq;
    std::int64_t jplus = 0;
};

ViroBreakdown viro_breakdown(const Arrangement& arrangement);

/// J0 = J+(K) + w_E^2/2 + w_M^2/2; no regularization involved.
HalfInteger j0_numeric(const ClosedCurve& curve, const EulerParams& params);

/// JE = J+(K_E) + w_{M1}^2/2 + w_{M2}^2/2 over a Levi-Civita component at E;
/// when two components exist both are evaluated and must agree.
HalfInteger jE_numeric(const ClosedCurve& curve, const EulerParams& params);
HalfInteger jM_numeric(const ClosedCurve& curve, const EulerParams& params);

struct JEMResult {
    std::int64_t jEM = 0;       // canonical in [0, 2n), or raw J+ when n = 0
    std::int64_t n = 0;
    std::int64_t raw_jplus = 0; // J+ of the lift component before reduction
};

/// Birkhoff route: lift, take one component, n = |w_0|, jEM = J+ mod 2n.
/// Component independence is asserted when two components exist.
JEMResult jEM_numeric(const ClosedCurve& curve);

/// One full numeric pass over a plane curve: base arrangement, both
/// Levi-Civita lifts, the Birkhoff lift, and the assembled invariant set,
/// with the Viro breakdown of every stage retained for reporting.
struct CurveInvariants {
    InvariantSet set;
    ViroBreakdown base;
    int w_e = 0, w_m = 0;
    int lc_components_e = 0, lc_components_m = 0, birkhoff_components = 0;
    ViroBreakdown lift_e, lift_m, birkhoff;
    std::int64_t lift_e_w1 = 0, lift_e_w2 = 0;  // windings about M1, M2
    std::int64_t lift_m_w1 = 0, lift_m_w2 = 0;  // windings about E1, E2
};

CurveInvariants compute_curve_invariants(const ClosedCurve& curve, const EulerParams& params);

/// Closed forms for T_{k,l} lemniscate orbits:
///   j0 = kl - k + 1,
///   jE = jM = kl/2 - k + 1 (l even) or 2kl - 2k + 1 (l odd),
///   (jEM, n) = (1 - k + kl - l^2 mod 2l, l).
InvariantSet theorem_formulas(int k, int l);

/// Self-intersection count of the collision-collision orbits on a T_{k,l}
/// torus: k(l-1)/2 - 1/2 for l even, k(l-1)/2 for l odd.
std::int64_t selfintersection_formula(int k, int l);

enum class DistinguishedKind { brake_brake, brake_collision, collision_type_I, collision_type_II };

/// J0 of a distinguished orbit with N self-intersections:
/// 2N, 2N + 1/2, 2N + 2, 2N + 1 respectively.
HalfInteger distinguished_j0(DistinguishedKind kind, std::int64_t n_self);

/// Covering formula for J+ under a degree-`degree` cover:
/// J+(lift) = degree^2 J+(base) - (degree^2 - 1) + n_lift - degree^2 n_base,
/// where n_* count double points.
std::int64_t covering_jplus_check(std::int64_t degree, std::int64_t jplus_base,
                                  std::int64_t n_base, std::int64_t n_lift);

std::int64_t canonical_mod(std::int64_t value, std::int64_t modulus);

struct CheckEntry {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    double mu = 0, c = 0;
    int k = 0, l = 0;
    bool has_numeric = false;
    InvariantSet numeric;
    InvariantSet closed_form;
    std::int64_t collision_n_numeric = -1;
    std::int64_t collision_n_formula = -1;
    std::vector<CheckEntry> checks;

    bool all_pass() const;
};

struct VerifyOptions {
    double phase = -1.0;        // < 0: generic default T_nu/(4l)
    int resolution = 512;       // samples per period
    double tol_geometry = 1e-8; // closure / symmetry / residual tolerance
    double tol_quadrature = 1e-12;
    int phase_retries = 3;      // jitters applied when a phase is non-generic
};

/// End-to-end harness: find the torus, trace a generic orbit, compute all
/// numeric invariants, compare against the closed forms, count collision
/// self-intersections, and run the structural consistency checks. Pipeline
/// errors are recorded as failed checks; remaining checks still run.
VerificationReport verify_torus(const EulerParams& params, int k, int l,
                                const VerifyOptions& options = {});

}  // namespace twocenter
