#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace gammareg {

/// A point of R^n for n in {1,2,3}. Unused coordinates stay zero so that
/// lexicographic comparison and distance work uniformly.
struct Point {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  int dim = 1;

  Point() = default;
  explicit Point(double x) : c{x, 0.0, 0.0}, dim(1) {}
  Point(double x, double y) : c{x, y, 0.0}, dim(2) {}
  Point(double x, double y, double z) : c{x, y, z}, dim(3) {}

  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
};

inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (int i = 0; i < a.dim; ++i) s += a[i] * b[i];
  return s;
}

inline Point operator-(const Point& a, const Point& b) {
  Point r = a;
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] - b[i];
  return r;
}

inline Point operator+(const Point& a, const Point& b) {
  Point r = a;
  for (int i = 0; i < a.dim; ++i) r[i] = a[i] + b[i];
  return r;
}

inline Point operator*(double s, const Point& a) {
  Point r = a;
  for (int i = 0; i < a.dim; ++i) r[i] = s * a[i];
  return r;
}

inline double norm2(const Point& a) { return std::sqrt(dot(a, a)); }

inline double dist2(const Point& a, const Point& b) { return norm2(a - b); }

inline double dist_inf(const Point& a, const Point& b) {
  double m = 0.0;
  for (int i = 0; i < a.dim; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Strict lexicographic order by coordinates.
inline bool lex_less(const Point& a, const Point& b) {
  for (int i = 0; i < a.dim; ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace gammareg
