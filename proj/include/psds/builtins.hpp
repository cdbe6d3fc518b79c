#pragma once

#include "psds/systems.hpp"

namespace psds {

/// Resonate-and-fire neuron: focus field (a x - b y, b x + a y) below the
/// line y = eps, membrane reset x -> -k eps on it. Requires a < 0, b > 0,
/// k > 0. `quadratic` adds the remainder c (x^2, x y) to the field.
ImpactingSystem make_neuron(double a, double b, double k, double quadratic = 0.0);

/// Stick-slip normal form: focus field below y = eps (a, b > 0), drift
/// field (m, -1) above it.
FilippovSystem make_filippov_normal_form(double a, double b, double m,
                                         double quadratic = 0.0);

/// Sweeping process with the moving half-plane constraint {y <= eps} and the
/// focus field (a, b > 0) inside.
SweepingProcess make_sweeping_halfplane(double a, double b, double quadratic = 0.0);

}  // namespace psds
