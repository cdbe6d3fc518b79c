#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "psds/errors.hpp"
#include "psds/vector_field.hpp"

namespace psds {

struct IntegratorOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double event_tolerance = 1e-11;
  double max_step = 0.0;       // 0 = pick from the span
  double sweeping_step = 1e-4; // catch-up oracle step
  double sample_dt = 0.0;      // 0 = record accepted steps only
  int max_events = 100;
};

using Rhs = std::function<Vec2(Vec2)>;

/// One accepted Dormand-Prince step with its quartic dense-output polynomial.
/// `h` is the width the polynomial was built over and never changes;
/// truncation at an event only moves `t_end` inside [t0, t0 + h].
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  double t_end = 0.0;
  Vec2 y0;
  Vec2 y1;
  std::array<Vec2, 4> dense;  // interpolant coefficients

  double t1() const { return t_end; }

  /// Continuous extension: theta in [0, 1] maps onto [t0, t0 + h].
  Vec2 eval_theta(double theta) const {
    const Vec2 acc = dense[0] * theta + dense[1] * (theta * theta) +
                     dense[2] * (theta * theta * theta) +
                     dense[3] * (theta * theta * theta * theta);
    return y0 + acc * h;
  }
  Vec2 eval(double t) const { return h == 0.0 ? y0 : eval_theta((t - t0) / h); }
};

/// Dense solution of one smooth flow span: contiguous accepted steps plus
/// O(1)-ish interpolation at arbitrary interior times.
class DenseSolution {
 public:
  double t_begin() const { return t_begin_; }
  double t_end() const { return steps_.empty() ? t_begin_ : steps_.back().t1(); }
  Vec2 begin_state() const { return y_begin_; }
  Vec2 end_state() const { return steps_.empty() ? y_begin_ : steps_.back().y1; }
  const std::vector<DenseStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }

  Vec2 eval(double t) const;

  void set_begin(double t, Vec2 y) {
    t_begin_ = t;
    y_begin_ = y;
  }
  void push(const DenseStep& s) { steps_.push_back(s); }
  /// Drops everything after time t and re-terminates the final step there.
  void truncate(double t, Vec2 exact_state);

 private:
  double t_begin_ = 0.0;
  Vec2 y_begin_;
  std::vector<DenseStep> steps_;
};

/// Single-step adaptive Dormand-Prince 5(4) driver. The simulators use it
/// directly so each accepted step can be scanned for events before the next
/// one is taken.
class Rk45Stepper {
 public:
  Rk45Stepper(Rhs rhs, double t0, Vec2 y0, double t_limit, const IntegratorOptions& opts);

  bool done() const { return done_; }
  double t() const { return t_; }
  Vec2 y() const { return y_; }

  /// Advances by one accepted step (clamped at the time limit).
  /// Throws StepFailure when the controller underflows below 1e-14.
  DenseStep step();

 private:
  Rhs rhs_;
  double t_;
  Vec2 y_;
  Vec2 f_;  // FSAL derivative at (t_, y_)
  double t_limit_;
  double h_;
  double max_step_;
  IntegratorOptions opts_;
  bool done_ = false;
};

/// Adaptive integration of the smooth flow over t_span with dense output.
DenseSolution integrate_smooth(const VectorField2& field, Vec2 s0,
                               std::pair<double, double> t_span,
                               const IntegratorOptions& opts = {});

DenseSolution integrate_smooth(const Rhs& rhs, Vec2 s0, std::pair<double, double> t_span,
                               const IntegratorOptions& opts = {});

}  // namespace psds
