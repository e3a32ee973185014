#pragma once

#include <memory>
#include <vector>

#include "twocenter/curve.hpp"
#include "twocenter/errors.hpp"
#include "twocenter/geometry.hpp"

namespace twocenter {

/// Physical configuration of the two-center problem. The primaries are fixed
/// at E = (-1, 0) (mass 1 - mu) and M = (1, 0) (mass mu); only negative
/// energies are admitted.
struct EulerParams {
    double mu;  // mass of M, in (0, 1)
    double c;   // energy, < 0

    Vec2 earth() const { return {-1.0, 0.0}; }
    Vec2 moon() const { return {1.0, 0.0}; }
};

/// Throws DomainError if mu or c is outside the admissible range.
void validate_params(const EulerParams& params);

/// Energy below which neither planetary nor lemniscate motion exists:
/// -1/2 - sqrt(mu - mu^2).
double critical_energy(double mu);

enum class RegionLabel { P, L, S, Sprime, NoMotion };

const char* to_string(RegionLabel label);

/// Classifies the Liouville leaf selected by the separation constant
/// f_lambda. Throws BoundaryRegion when a defining inequality vanishes
/// within boundary_tol (critical torus between regions).
RegionLabel classify_region(const EulerParams& params, double f_lambda,
                            double boundary_tol = 1e-12);

/// Squared momenta as functions of position on the leaf:
///   p_lambda^2 = 2 (f_lambda + cosh(lambda) + c cosh^2(lambda))
///   p_nu^2     = 2 (-f_lambda - (1 - 2 mu) cos(nu) - c cos^2(nu))
double p_lambda_sq(const EulerParams& params, double f_lambda, double lambda);
double p_nu_sq(const EulerParams& params, double f_lambda, double nu);

/// Unique positive root of p_lambda^2 for a lemniscate leaf, to 1e-12.
/// Throws NoTurningPoint when the oscillation interval is empty or collapsed.
double lambda_turning_point(const EulerParams& params, double f_lambda);

/// Minimal period of the lambda oscillation in regularized time:
///   T_lambda = 4 * integral_0^lambda_max  d lambda / |p_lambda|.
/// The endpoint inverse-square-root singularity is removed by the
/// substitution lambda = lambda_max sin(theta) before quadrature.
double period_lambda(const EulerParams& params, double f_lambda, double rel_tol = 1e-11);

/// Minimal period of the nu circulation:
///   T_nu = integral_{-pi}^{pi}  d nu / |p_nu|.
/// Throws NotLemniscate if p_nu^2 fails to stay positive.
double period_nu(const EulerParams& params, double f_lambda, double rel_tol = 1e-11);

/// One Liouville torus of lemniscate type, identified by its rotation data.
struct TorusData {
    int k = 0;             // rotation number numerator
    int l = 0;             // rotation number denominator, gcd(k, l) = 1
    double f_lambda = 0;   // separation constant (value of F_lambda)
    double lambda_max = 0; // turning point of the lambda oscillation
    double T_lambda = 0;   // minimal lambda period (regularized time)
    double T_nu = 0;       // minimal nu period
    EulerParams params{0.5, -0.5};

    double rotation_number() const { return T_nu / T_lambda; }
    /// Full orbit period k*T_lambda = l*T_nu.
    double period() const { return static_cast<double>(k) * T_lambda; }
};

/// Interval of separation constants whose leaves are lemniscate tori at the
/// given (mu, c). Throws DomainError when the L-region is empty (c <= c_J).
struct LemniscateInterval {
    double f_lo;  // oscillation through lambda = 0 appears above this
    double f_hi;  // nu circulation stops at this value
};
LemniscateInterval lemniscate_interval(const EulerParams& params);

/// Finds the torus with T_nu / T_lambda = k / l by a bracketing scan of the
/// admissible f_lambda interval (64 seeds, geometric endpoint refinement)
/// followed by bisection. |R - k/l| <= r_tol on return.
TorusData find_torus(const EulerParams& params, int k, int l, double r_tol = 1e-10);

/// State on the regularized level in elliptic coordinates.
struct EllipticState {
    double lambda = 0;
    double nu = 0;        // unwrapped (monotone along lemniscate traces)
    double p_lambda = 0;
    double p_nu = 0;
};

/// Residual of the decoupled regularized Hamiltonian F_lambda + F_nu at a
/// state; vanishes on the zero level.
double energy_residual(const EulerParams& params, const EllipticState& state);

/// Cartesian image of elliptic coordinates:
///   q = (cosh(lambda) cos(nu), sinh(lambda) sin(nu)).
Vec2 elliptic_to_cartesian(double lambda, double nu);

/// Continuous-time access to the orbit of a torus at a fixed phase. Both
/// separated flows are tabulated by cumulative quadrature and inverted on
/// demand, so evaluation at arbitrary t carries only quadrature error.
class OrbitEvaluator {
public:
    OrbitEvaluator() = default;
    OrbitEvaluator(const TorusData& torus, double phase, double rel_tol = 1e-12);

    bool valid() const { return impl_ != nullptr; }
    /// k * T_lambda with the evaluator's own quadrature resolution.
    double period() const;
    EllipticState state_at(double t) const;
    Vec2 q_at(double t) const;
    /// Time at which the nu flow (phase included) first reaches `nu` above
    /// the flow's base point nu = -pi at t = -phase.
    double phase_time_of_nu(double nu) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// A traced periodic orbit: closed plane curve plus the sampled elliptic
/// states and times that produced it.
struct OrbitTrace {
    ClosedCurve curve;
    std::vector<double> times;
    std::vector<EllipticState> states;
    TorusData torus;
    double phase = 0;   // time offset of the nu cycle from E-collision alignment
    double t_end = 0;   // traced span [0, t_end); samples exclude t_end
    double closure_error = 0;  // |q(t_end) - q(0)|
    OrbitEvaluator evaluator;
};

/// Default generic phase: T_nu / (4 l) past the E-collision alignment.
double generic_phase(const TorusData& torus);

/// Traces one full period of the T_{k,l} orbit whose nu motion is shifted by
/// `phase` (a time offset along the nu flow; phase = 0 starts at the E
/// collision). Time parameterization is inverted from cumulative quadrature
/// tables, not ODE stepping. Throws CollisionOnTrace when a generic trace was
/// requested but the orbit passes within `collision_guard` of a primary.
OrbitTrace trace_orbit(const TorusData& torus, double phase, int samples_per_period,
                       bool allow_collision = false, double collision_guard = 1e-6);

/// Traces a collision-collision orbit of the torus.
/// l odd: two type-II orbits exist; which = 0 gives the orbit launched at E,
/// which = 1 its reflection across the q1-axis.
/// l even: which = 0 gives the type-I orbit colliding at E, which = 1 the one
/// at M; both are q1-symmetric and traced over half the nominal period (the
/// full period covers the same set twice).
OrbitTrace collision_orbit(const TorusData& torus, int which, int samples_per_period);

}  // namespace twocenter
