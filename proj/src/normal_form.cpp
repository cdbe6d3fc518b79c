#include "psds/normal_form.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "psds/errors.hpp"
#include "psds/rootfind.hpp"

namespace psds {

double arccot(double x) { return M_PI / 2.0 - std::atan(x); }

double psi(double r, double ratio) {
  return ratio * (-M_PI / 2.0) - ratio * arccot(r) + 0.5 * std::log1p(r * r);
}

double return_equation_lhs(double ratio, double k) {
  return ratio * (3.0 * M_PI / 2.0) - ratio * arccot(-k) + 0.5 * std::log1p(k * k);
}

double solve_return_point(double ratio, double k) {
  const double target = return_equation_lhs(ratio, k);
  const double r_min = -ratio;  // psi is increasing to the right of its minimizer
  if (!(target > psi(r_min, ratio))) {
    throw NoSolution("return equation has no root on the branch r > -ratio");
  }
  double hi = std::max(1.0, r_min + 1.0);
  while (psi(hi, ratio) < target) {
    hi *= 2.0;
    if (hi > 1e12) throw NoSolution("return equation root escaped the search range");
  }
  double r = bisect([&](double x) { return psi(x, ratio) - target; }, r_min, hi, 1e-13);
  // Newton polish with psi'(r) = (r + ratio) / (1 + r^2).
  for (int i = 0; i < 6; ++i) {
    const double f = psi(r, ratio) - target;
    const double df = (r + ratio) / (1.0 + r * r);
    if (df == 0.0) break;
    const double step = f / df;
    r -= step;
    if (std::fabs(step) < 1e-15 * std::max(1.0, std::fabs(r))) break;
  }
  return r;
}

bool neuron_region_test(double ratio, double k) {
  if (!(ratio < 0.0) || !(k > 0.0)) {
    throw DomainError("neuron region requires ratio < 0 and k > 0");
  }
  return return_equation_lhs(ratio, k) > psi(-ratio, ratio);
}

bool filippov_region_test(double ratio, double m) {
  if (!(ratio > 0.0)) return false;
  if (m < -ratio) return true;
  if (m == -ratio) return false;  // the dividing line is excluded
  const double bound = (1.0 - ratio * m) / (ratio + m);
  return return_equation_lhs(ratio, ratio) < psi(bound, ratio);
}

bool sweeping_region_test(double ratio) {
  if (!(ratio > 0.0)) return false;
  return ratio * (4.0 * std::atan(ratio) - 3.0 * M_PI) > 2.0 * std::log(ratio);
}

double sweeping_threshold() {
  const auto f = [](double r) {
    return r * (4.0 * std::atan(r) - 3.0 * M_PI) - 2.0 * std::log(r);
  };
  return bisect(f, 1e-6, 1.0, 1e-10);
}

std::size_t RegionGrid::count_true() const {
  std::size_t n = 0;
  for (auto v : values) n += v != 0;
  return n;
}

RegionGrid region_grid(const std::function<std::optional<bool>(double, double)>& test,
                       const AxisSpec& axis1, const AxisSpec& axis2) {
  if (axis1.steps < 1 || axis2.steps < 1) {
    throw DomainError("region grid needs positive step counts");
  }
  RegionGrid grid{axis1, axis2, {}};
  grid.values.resize(static_cast<std::size_t>(axis1.steps) * axis2.steps, 0);
  for (int i = 0; i < axis1.steps; ++i) {
    for (int j = 0; j < axis2.steps; ++j) {
      const auto result = test(axis1.value(i), axis2.value(j));
      grid.values[static_cast<std::size_t>(i) * axis2.steps + j] =
          (result && *result) ? 1 : 0;
    }
  }
  return grid;
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_region_csv(const RegionGrid& grid, std::ostream& os) {
  os << "# axis1 = " << grid.axis1.name << " from " << num(grid.axis1.from) << " to "
     << num(grid.axis1.to) << " steps " << grid.axis1.steps << '\n';
  os << "# axis2 = " << grid.axis2.name << " from " << num(grid.axis2.from) << " to "
     << num(grid.axis2.to) << " steps " << grid.axis2.steps << '\n';
  os << "# cells outside the predicate domain are recorded as 0\n";
  os << grid.axis1.name << ',' << grid.axis2.name << ",value\n";
  for (int i = 0; i < grid.axis1.steps; ++i) {
    for (int j = 0; j < grid.axis2.steps; ++j) {
      os << num(grid.axis1.value(i)) << ',' << num(grid.axis2.value(j)) << ','
         << (grid.at(i, j) ? 1 : 0) << '\n';
    }
  }
}

std::string to_csv(const RegionGrid& grid) {
  std::ostringstream os;
  write_region_csv(grid, os);
  return os.str();
}

}  // namespace psds
