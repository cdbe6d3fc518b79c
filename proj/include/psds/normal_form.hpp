#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace psds {

/// arccot onto (0, pi), computed as pi/2 - atan(x). The branch matters: all
/// return-equation identities below assume arccot(-k) in (pi/2, pi) for k > 0.
double arccot(double x);

/// psi(r) = ratio (-pi/2) - ratio arccot(r) + ln(1 + r^2)/2, the landing side
/// of the return equation. Strictly increasing on r >= -ratio.
double psi(double r, double ratio);

/// The departure side: ratio (3 pi/2) - ratio arccot(-k) + ln(1 + k^2)/2.
double return_equation_lhs(double ratio, double k);

/// Landing coordinate r > -ratio of the reduced cycle, from the implicit
/// return equation psi(r) = lhs(ratio, k). Neuron: ratio < 0, reset gain k;
/// Filippov / sweeping: k = ratio > 0. Throws NoSolution when the equation
/// has no root on the admissible branch (the solvability inequality fails).
double solve_return_point(double ratio, double k);

/// Solvability region of the neuron return equation (ratio < 0, k > 0);
/// boundary points count as outside. Throws DomainError off the quadrant.
bool neuron_region_test(double ratio, double k);

/// Cycle region for the Filippov normal form: m < -ratio outright, or
/// m > -ratio together with the strict landing inequality. The dividing line
/// m = -ratio and invalid ratios (<= 0) are outside.
bool filippov_region_test(double ratio, double m);

/// Cycle region of the sweeping example: ratio (4 arctan ratio - 3 pi) >
/// 2 ln ratio on ratio > 0.
bool sweeping_region_test(double ratio);

/// Root of ratio (4 arctan ratio - 3 pi) = 2 ln ratio on (0, 1), bisected to
/// 1e-10; the boundary of sweeping_region_test.
double sweeping_threshold();

struct AxisSpec {
  std::string name;
  double from = 0.0;
  double to = 0.0;
  int steps = 1;

  double value(int i) const {
    if (steps <= 1) return from;
    return from + (to - from) * (static_cast<double>(i) / (steps - 1));
  }
};

/// Row-major boolean grid over two axes. Cells where the predicate is
/// undefined are recorded as false (the CSV header notes the convention).
struct RegionGrid {
  AxisSpec axis1;
  AxisSpec axis2;
  std::vector<std::uint8_t> values;

  bool at(int i, int j) const { return values[static_cast<std::size_t>(i) * axis2.steps + j] != 0; }
  std::size_t count_true() const;
};

/// Evaluates the predicate on the grid (axis1 outer, axis2 inner, row-major).
/// A nullopt result marks the cell undefined.
RegionGrid region_grid(const std::function<std::optional<bool>(double, double)>& test,
                       const AxisSpec& axis1, const AxisSpec& axis2);

/// CSV: sidecar metadata header (# key = value), then axis1,axis2,value rows.
void write_region_csv(const RegionGrid& grid, std::ostream& os);
std::string to_csv(const RegionGrid& grid);

}  // namespace psds
