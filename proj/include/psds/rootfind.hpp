#pragma once

#include <functional>

namespace psds {

struct BrentResult {
  double root = 0.0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Brent's method on a bracketing interval [a, b] with f(a) f(b) <= 0.
/// Stops when the bracket width falls below `x_tol` (plus a machine-relative
/// floor) or the budget of `max_iter` iterations is exhausted.
BrentResult brent(const std::function<double(double)>& f, double a, double b,
                  double x_tol, int max_iter = 80);

/// Plain bisection; used where a guaranteed, derivative-free oracle is wanted.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double x_tol, int max_iter = 200);

}  // namespace psds
