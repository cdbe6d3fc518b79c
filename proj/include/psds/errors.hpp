#pragma once

#include <stdexcept>
#include <string>

namespace psds {

/// Base class for all failures raised by solvers and simulators.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Surface gradient too small to define a normal direction.
struct ZeroGradient : Error {
  using Error::Error;
};

/// Adaptive step size underflowed (below 1e-14).
struct StepFailure : Error {
  using Error::Error;
};

/// Two impacts (or an impact immediately after a reset) within 1e-9 time units.
struct ChatterDetected : Error {
  using Error::Error;
};

/// No convex combination of the two fields is tangent to the surface.
struct NotSliding : Error {
  using Error::Error;
};

/// KKT projection Newton exceeded its iteration budget.
struct ProjectionDiverged : Error {
  using Error::Error;
};

struct NewtonDiverged : Error {
  using Error::Error;
};

struct SingularJacobian : Error {
  using Error::Error;
};

/// A closed-form derivative formula hit a zero denominator.
struct DegenerateData : Error {
  using Error::Error;
};

struct NotOnSurface : Error {
  using Error::Error;
};

/// Flow never returned to the impact line within the search horizon.
struct NoReturn : Error {
  using Error::Error;
};

/// Reduced cycle touched the impact line between departure and landing.
struct WrongImpactCount : Error {
  using Error::Error;
};

/// The scalar return equation has no root on the admissible branch.
struct NoSolution : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

/// confirm_cycle found the predicted loop violated; carries the assertion text.
struct ConfirmationFailed : Error {
  using Error::Error;
};

}  // namespace psds
