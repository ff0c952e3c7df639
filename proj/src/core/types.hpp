#pragma once

#include <cmath>
#include <complex>

namespace torusbif {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

// Row-major 2x2 matrix.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

  Vec2 apply(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
  Vec2 apply_left(const Vec2& v) const { return {a11 * v.x + a21 * v.y, a12 * v.x + a22 * v.y}; }
  double trace() const { return a11 + a22; }
  double det() const { return a11 * a22 - a12 * a21; }
};

// Solves M z = rhs for a well-conditioned 2x2 system.
inline Vec2 solve2(const Mat2& m, const Vec2& rhs) {
  const double d = m.det();
  return {(rhs.x * m.a22 - rhs.y * m.a12) / d, (m.a11 * rhs.y - m.a21 * rhs.x) / d};
}

inline std::pair<std::complex<double>, std::complex<double>> eigenvalues2(double tr, double det) {
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det, 0.0));
  return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

// Wraps a real number to the fundamental domain [0, 1).
inline double wrap01(double v) {
  double w = v - std::floor(v);
  if (w >= 1.0) w -= 1.0;  // guard against floor rounding at negative epsilons
  return w;
}

// Distance on the circle R/Z.
inline double circ_dist(double a, double b) {
  double d = std::fabs(wrap01(a) - wrap01(b));
  return std::min(d, 1.0 - d);
}

}  // namespace torusbif
