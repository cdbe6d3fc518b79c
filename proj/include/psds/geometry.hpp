#pragma once

#include <array>
#include <cmath>

namespace psds {

/// Planar state / vector. All analysis in this library is strictly 2-D.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }

  double norm() const { return std::hypot(x, y); }
  constexpr double norm_sq() const { return x * x + y * y; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

using State2 = Vec2;

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the cross product; zero iff a, b are parallel.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// 2x2 matrix, row-major.
struct Mat2 {
  double a00 = 0.0, a01 = 0.0;
  double a10 = 0.0, a11 = 0.0;

  constexpr Vec2 operator*(Vec2 v) const {
    return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y};
  }
  constexpr Mat2 operator*(const Mat2& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
  }
  constexpr Mat2 operator-(const Mat2& o) const {
    return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11};
  }
  constexpr Mat2 transpose() const { return {a00, a10, a01, a11}; }
  constexpr double det() const { return a00 * a11 - a01 * a10; }
  constexpr double trace() const { return a00 + a11; }
  double max_abs() const {
    return std::max(std::max(std::fabs(a00), std::fabs(a01)),
                    std::max(std::fabs(a10), std::fabs(a11)));
  }
  /// Discriminant of the characteristic polynomial; negative for a focus.
  constexpr double eigen_discriminant() const {
    return trace() * trace() - 4.0 * det();
  }
  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, -s, s, c};
  }
};

/// Solves M v = rhs by Cramer's rule. Caller checks det beforehand.
constexpr Vec2 solve2(const Mat2& m, Vec2 rhs) {
  const double d = m.det();
  return {(rhs.x * m.a11 - m.a01 * rhs.y) / d,
          (m.a00 * rhs.y - rhs.x * m.a10) / d};
}

struct Vec3 {
  double a = 0.0, b = 0.0, c = 0.0;
  Vec3 operator+(Vec3 o) const { return {a + o.a, b + o.b, c + o.c}; }
  Vec3 operator-(Vec3 o) const { return {a - o.a, b - o.b, c - o.c}; }
  Vec3 operator*(double s) const { return {a * s, b * s, c * s}; }
  double norm_inf() const {
    return std::max(std::fabs(a), std::max(std::fabs(b), std::fabs(c)));
  }
};

/// 3x3 matrix (row-major flat storage) for the pseudo-equilibrium Newton systems.
struct Mat3 {
  std::array<double, 9> m{};
  double& operator()(int r, int c) { return m[3 * r + c]; }
  double operator()(int r, int c) const { return m[3 * r + c]; }
  double det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
  }
};

/// Gaussian elimination with partial pivoting; pivot magnitudes below
/// `singular_tol` report failure through the return flag.
bool solve3(const Mat3& a, const Vec3& rhs, Vec3& out, double singular_tol = 1e-300);

}  // namespace psds
