#include "psds/builtins.hpp"

#include "psds/errors.hpp"

namespace psds {

ImpactingSystem make_neuron(double a, double b, double k, double quadratic) {
  if (!(a < 0.0) || !(b > 0.0) || !(k > 0.0)) {
    throw DomainError("neuron builtin requires a < 0, b > 0, k > 0");
  }
  ImpactingSystem sys;
  sys.field = focus_field(a, b, quadratic);
  sys.surface = level_line_surface();
  sys.reset = [k](double eps) -> Vec2 { return {-k * eps, eps}; };
  sys.reset_u_derivative = -k;
  return sys;
}

FilippovSystem make_filippov_normal_form(double a, double b, double m, double quadratic) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("filippov normal form requires a > 0, b > 0");
  }
  FilippovSystem sys;
  sys.field_minus = focus_field(a, b, quadratic);
  sys.field_plus = upper_drift_field(m);
  sys.surface = level_line_surface();
  return sys;
}

SweepingProcess make_sweeping_halfplane(double a, double b, double quadratic) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("sweeping half-plane builtin requires a > 0, b > 0");
  }
  SweepingProcess proc;
  proc.field = focus_field(a, b, quadratic);
  proc.surface = level_line_surface();
  return proc;
}

}  // namespace psds
