#pragma once

#include <functional>
#include <optional>
#include <variant>

#include "psds/surface.hpp"
#include "psds/vector_field.hpp"

namespace psds {

/// Flow under `field` while H < 0; on reaching H = 0 the state jumps to the
/// point reset(eps), which must itself lie on the surface.
struct ImpactingSystem {
  VectorField2 field;
  SwitchingSurface surface;
  std::function<Vec2(double)> reset;
  /// u-component of d/deps reset(eps) at 0 when supplied by the caller;
  /// otherwise recovered by Richardson extrapolation of one-sided differences.
  std::optional<double> reset_u_derivative;
};

struct FilippovSystem {
  VectorField2 field_minus;  // active where H < 0
  VectorField2 field_plus;   // active where H > 0
  SwitchingSurface surface;
};

/// dot s in -N_C(eps)(s) + field(s) with C(eps) = {H(., eps) <= 0}.
struct SweepingProcess {
  VectorField2 field;
  SwitchingSurface surface;
};

using SystemSpec = std::variant<ImpactingSystem, FilippovSystem, SweepingProcess>;

enum class SystemClass { Impacting, Filippov, Sweeping };

SystemClass system_class(const SystemSpec& spec);
const char* to_string(SystemClass c);

/// The field that owns the boundary equilibrium: the only field for
/// impacting/sweeping systems, the minus-side field for Filippov systems.
const VectorField2& minus_field(const SystemSpec& spec);
const SwitchingSurface& surface_of(const SystemSpec& spec);

/// (A'(0), B'(0)) for the reset curve of an impacting system. Uses the
/// user-supplied u-component when present; otherwise Richardson-extrapolates
/// (reset(d) - reset(0))/d over d in {1e-3, 1e-4}. B'(0) follows the same
/// path (its consistency with -H_eps/H_y is a validation check, not forced).
Vec2 reset_derivative_at_zero(const ImpactingSystem& sys);

}  // namespace psds
