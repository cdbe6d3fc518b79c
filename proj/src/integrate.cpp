#include "psds/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace psds {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5.0},
    {3.0 / 40.0, 9.0 / 40.0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0},
    {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0},
};
// 5th-order weights are row 6 of kA (FSAL); error weights below are b5 - b4.
constexpr double kE[7] = {71.0 / 57600.0,      0.0,          -71.0 / 16695.0,
                          71.0 / 1920.0,       -17253.0 / 339200.0,
                          22.0 / 525.0,        -1.0 / 40.0};

constexpr double kMinStep = 1e-14;
constexpr double kSafety = 0.9;
constexpr double kMaxGrow = 5.0;
constexpr double kMaxShrink = 0.2;

double error_norm(Vec2 err, Vec2 y0, Vec2 y1, const IntegratorOptions& opts) {
  const double sx = opts.abs_tol + opts.rel_tol * std::max(std::fabs(y0.x), std::fabs(y1.x));
  const double sy = opts.abs_tol + opts.rel_tol * std::max(std::fabs(y0.y), std::fabs(y1.y));
  const double ex = err.x / sx;
  const double ey = err.y / sy;
  return std::sqrt(0.5 * (ex * ex + ey * ey));
}

double initial_step(const Rhs& rhs, double t0, Vec2 y0, Vec2 f0, double span,
                    const IntegratorOptions& opts) {
  const double d0 = std::max(y0.norm(), 1e-8);
  const double d1 = std::max(f0.norm(), 1e-8);
  double h0 = 0.01 * d0 / d1;
  const Vec2 y1 = y0 + f0 * h0;
  const Vec2 f1 = rhs(y1);
  const double d2 = (f1 - f0).norm() / h0;
  double h1;
  if (std::max(d1, d2) <= 1e-15) {
    h1 = std::max(1e-6, h0 * 1e-3);
  } else {
    h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
  }
  (void)t0;
  (void)opts;
  return std::min({100.0 * h0, h1, span});
}

}  // namespace

Vec2 DenseSolution::eval(double t) const {
  if (steps_.empty()) return y_begin_;
  if (t <= steps_.front().t0) return steps_.front().eval(t);
  if (t >= steps_.back().t1()) return steps_.back().y1;
  std::size_t lo = 0, hi = steps_.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (steps_[mid].t1() < t) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return steps_[lo].eval(t);
}

void DenseSolution::truncate(double t, Vec2 exact_state) {
  while (!steps_.empty() && steps_.back().t0 >= t) steps_.pop_back();
  if (steps_.empty()) {
    DenseStep stub;  // cut at or before the start: degenerate marker
    stub.t0 = t_begin_;
    stub.h = 0.0;
    stub.t_end = t;
    stub.y0 = y_begin_;
    stub.y1 = exact_state;
    steps_.push_back(stub);
    return;
  }
  DenseStep& last = steps_.back();
  last.t_end = t;
  last.y1 = exact_state;
}

Rk45Stepper::Rk45Stepper(Rhs rhs, double t0, Vec2 y0, double t_limit,
                         const IntegratorOptions& opts)
    : rhs_(std::move(rhs)), t_(t0), y_(y0), t_limit_(t_limit), opts_(opts) {
  const double span = t_limit - t0;
  max_step_ = opts.max_step > 0.0 ? opts.max_step : std::max(span / 8.0, 1e-12);
  f_ = rhs_(y_);
  h_ = std::min(initial_step(rhs_, t0, y0, f_, span, opts), max_step_);
  done_ = span <= 0.0;
}

DenseStep Rk45Stepper::step() {
  if (done_) throw Error("step() called on a finished stepper");
  std::array<Vec2, 7> k;
  for (;;) {
    double h = std::min(h_, max_step_);
    bool clamped = false;
    if (t_ + h >= t_limit_) {
      h = t_limit_ - t_;
      clamped = true;
    }
    if (h < kMinStep) {
      throw StepFailure("step size underflow below 1e-14");
    }

    k[0] = f_;
    for (int i = 1; i < 6; ++i) {
      Vec2 acc{0.0, 0.0};
      for (int j = 0; j < i; ++j) acc = acc + k[j] * kA[i][j];
      k[i] = rhs_(y_ + acc * h);
    }
    Vec2 acc{0.0, 0.0};
    for (int j = 0; j < 6; ++j) acc = acc + k[j] * kA[6][j];
    const Vec2 y1 = y_ + acc * h;
    k[6] = rhs_(y1);

    Vec2 err{0.0, 0.0};
    for (int j = 0; j < 7; ++j) err = err + k[j] * kE[j];
    err = err * h;
    const double norm = error_norm(err, y_, y1, opts_);

    if (norm <= 1.0 || !std::isfinite(norm)) {
      if (!std::isfinite(norm)) {
        // Non-finite stage values: retry smaller like a rejected step.
        h_ = h * kMaxShrink;
        continue;
      }
      DenseStep out;
      out.t0 = t_;
      out.h = h;
      out.t_end = t_ + h;
      out.y0 = y_;
      out.y1 = y1;
      // Cubic Hermite continuous extension from the exact endpoint data
      // (y0, f0) and (y1, f1); interior error O(h^4).
      const Vec2 delta = (y1 - y_) / h;
      out.dense[0] = k[0];
      out.dense[1] = delta * 3.0 - k[0] * 2.0 - k[6];
      out.dense[2] = delta * -2.0 + k[0] + k[6];
      out.dense[3] = {0.0, 0.0};
      t_ += h;
      y_ = y1;
      f_ = k[6];  // FSAL
      const double factor =
          norm == 0.0 ? kMaxGrow
                      : std::min(kMaxGrow, std::max(kMaxShrink, kSafety * std::pow(norm, -0.2)));
      h_ = h * factor;
      if (clamped || t_ >= t_limit_) done_ = true;
      return out;
    }
    h_ = h * std::min(1.0, std::max(kMaxShrink, kSafety * std::pow(norm, -0.2)));
  }
}

DenseSolution integrate_smooth(const Rhs& rhs, Vec2 s0, std::pair<double, double> t_span,
                               const IntegratorOptions& opts) {
  if (t_span.second < t_span.first) {
    throw DomainError("integrate_smooth requires a nondecreasing time span");
  }
  DenseSolution sol;
  sol.set_begin(t_span.first, s0);
  if (t_span.second == t_span.first) return sol;
  Rk45Stepper stepper(rhs, t_span.first, s0, t_span.second, opts);
  while (!stepper.done()) sol.push(stepper.step());
  return sol;
}

DenseSolution integrate_smooth(const VectorField2& field, Vec2 s0,
                               std::pair<double, double> t_span,
                               const IntegratorOptions& opts) {
  return integrate_smooth([&field](Vec2 y) { return field.eval(y); }, s0, t_span, opts);
}

}  // namespace psds
