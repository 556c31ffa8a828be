#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace fraclab {

/// Fixed-capacity Euclidean vector for ambient dimensions 1..3.
/// Unused trailing coordinates are kept at zero so that dot/norm work
/// uniformly regardless of dim.
struct Vec {
  int dim = 0;
  std::array<double, 3> v{{0.0, 0.0, 0.0}};

  Vec() = default;
  explicit Vec(double x) : dim(1), v{{x, 0.0, 0.0}} {}
  Vec(double x, double y) : dim(2), v{{x, y, 0.0}} {}
  Vec(double x, double y, double z) : dim(3), v{{x, y, z}} {}

  static Vec zero(int d) {
    Vec r;
    r.dim = d;
    return r;
  }

  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }

  double x() const { return v[0]; }
  double y() const { return v[1]; }
  double z() const { return v[2]; }
};

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  for (int i = 0; i < a.dim; ++i) r[i] += b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  for (int i = 0; i < a.dim; ++i) r[i] -= b[i];
  return r;
}

inline Vec operator*(double s, const Vec& a) {
  Vec r = a;
  for (int i = 0; i < a.dim; ++i) r[i] *= s;
  return r;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

/// 3-D cross product. Inputs of lower dimension are treated as embedded
/// with zero trailing coordinates; the result is always 3-D.
inline Vec cross(const Vec& a, const Vec& b) {
  Vec r = Vec::zero(3);
  r[0] = a.v[1] * b.v[2] - a.v[2] * b.v[1];
  r[1] = a.v[2] * b.v[0] - a.v[0] * b.v[2];
  r[2] = a.v[0] * b.v[1] - a.v[1] * b.v[0];
  return r;
}

inline std::string to_string(const Vec& a) {
  std::string s = "(";
  for (int i = 0; i < a.dim; ++i) {
    if (i) s += ", ";
    s += std::to_string(a[i]);
  }
  s += ")";
  return s;
}

/// Dense symmetric-capable 3x3 matrix, used for Hessians. As with Vec,
/// only the leading dim x dim block is meaningful.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  double at(int i, int j) const {
    return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  double& at(int i, int j) {
    return m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

}  // namespace fraclab
