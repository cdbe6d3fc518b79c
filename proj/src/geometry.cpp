#include "psds/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace psds {

bool solve3(const Mat3& a, const Vec3& rhs, Vec3& out, double singular_tol) {
  double aug[3][4] = {{a(0, 0), a(0, 1), a(0, 2), rhs.a},
                      {a(1, 0), a(1, 1), a(1, 2), rhs.b},
                      {a(2, 0), a(2, 1), a(2, 2), rhs.c}};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(aug[r][col]) > std::fabs(aug[pivot][col])) pivot = r;
    }
    if (std::fabs(aug[pivot][col]) <= singular_tol) return false;
    if (pivot != col) std::swap(aug[pivot], aug[col]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = aug[r][col] / aug[col][col];
      for (int c = col; c < 4; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  double x[3];
  for (int r = 2; r >= 0; --r) {
    double s = aug[r][3];
    for (int c = r + 1; c < 3; ++c) s -= aug[r][c] * x[c];
    x[r] = s / aug[r][r];
  }
  out = {x[0], x[1], x[2]};
  return true;
}

}  // namespace psds
