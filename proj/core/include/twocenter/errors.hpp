#pragma once

#include <stdexcept>
#include <string>

namespace twocenter {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of an operation (bad mu, c, ...).
struct DomainError : Error { using Error::Error; };

// classify_region: a defining inequality holds with equality within tolerance.
struct BoundaryRegion : Error { using Error::Error; };

struct NoTurningPoint : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct NotLemniscate : Error { using Error::Error; };
struct RotationNumberUnattainable : Error { using Error::Error; };
struct CollisionOnTrace : Error { using Error::Error; };

struct PointOnCurve : Error { using Error::Error; };
struct NonGenericCurve : Error { using Error::Error; };
struct ArrangementInconsistency : Error { using Error::Error; };

struct SingularityOnCurve : Error { using Error::Error; };
struct BranchTrackingFailure : Error { using Error::Error; };

// Catch-all for internal numeric sanity checks (winding residual too large,
// half-integer sums failing to combine to an integer, ...).
struct NumericError : Error { using Error::Error; };

}  // namespace twocenter
