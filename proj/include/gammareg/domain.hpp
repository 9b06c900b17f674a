#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "gammareg/errors.hpp"
#include "gammareg/point.hpp"

namespace gammareg {

/// Axis-aligned box in R^dim, dim in {1,2,3}.
struct Box {
  std::vector<double> lower, upper;
};

/// Convex polygon in R^2, vertices in strictly convex counter-clockwise order.
struct Polytope2D {
  std::vector<Point> vertices;
};

/// A compact convex subset of R^n (n <= 3): a box or a 2D polygon.
class Domain {
public:
  explicit Domain(Box box) : kind_(std::move(box)) { validate(); }
  explicit Domain(Polytope2D poly) : kind_(std::move(poly)) { validate(); }

  static Domain box(std::vector<double> lower, std::vector<double> upper) {
    return Domain(Box{std::move(lower), std::move(upper)});
  }
  static Domain polytope2d(std::vector<Point> vertices) {
    return Domain(Polytope2D{std::move(vertices)});
  }

  bool is_box() const { return std::holds_alternative<Box>(kind_); }
  const Box& as_box() const { return std::get<Box>(kind_); }
  const Polytope2D& as_polytope() const { return std::get<Polytope2D>(kind_); }

  int dim() const {
    if (is_box()) return static_cast<int>(as_box().lower.size());
    return 2;
  }

  /// Euclidean diameter of the set.
  double diameter() const {
    if (is_box()) {
      const auto& b = as_box();
      double s = 0.0;
      for (std::size_t i = 0; i < b.lower.size(); ++i) {
        double d = b.upper[i] - b.lower[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    const auto& vs = as_polytope().vertices;
    double best = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        best = std::max(best, dist2(vs[i], vs[j]));
    return best;
  }

  /// Global geometric tolerance: 1e-9 x diameter. Single source of truth for
  /// deduplication and membership tests.
  double epsilon_geom() const { return 1e-9 * diameter(); }

  /// Extreme points of the set: box corners or polygon vertices.
  std::vector<Point> extreme_points() const {
    std::vector<Point> out;
    if (is_box()) {
      const auto& b = as_box();
      int d = dim();
      int n = 1 << d;
      for (int m = 0; m < n; ++m) {
        Point p;
        p.dim = d;
        for (int i = 0; i < d; ++i) p[i] = (m >> i & 1) ? b.upper[i] : b.lower[i];
        out.push_back(p);
      }
    } else {
      out = as_polytope().vertices;
    }
    return out;
  }

  /// Membership within tolerance tol (Euclidean distance for boxes per-axis,
  /// signed half-plane distance for polygons).
  bool contains(const Point& p, double tol) const {
    if (is_box()) {
      const auto& b = as_box();
      if (p.dim != dim()) return false;
      for (int i = 0; i < dim(); ++i)
        if (p[i] < b.lower[i] - tol || p[i] > b.upper[i] + tol) return false;
      return true;
    }
    const auto& vs = as_polytope().vertices;
    if (p.dim != 2) return false;
    std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = vs[i];
      const Point& b = vs[(i + 1) % n];
      // CCW polygon: inside points have non-negative cross products.
      double cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
      double edge_len = dist2(b, a);
      if (cross < -tol * std::max(edge_len, 1e-300)) return false;
    }
    return true;
  }

private:
  void validate() const {
    if (is_box()) {
      const auto& b = as_box();
      if (b.lower.size() != b.upper.size())
        throw InvalidDomain("box lower/upper dimension mismatch");
      if (b.lower.empty() || b.lower.size() > 3)
        throw InvalidDomain("box dimension must be 1, 2 or 3");
      for (std::size_t i = 0; i < b.lower.size(); ++i) {
        if (!std::isfinite(b.lower[i]) || !std::isfinite(b.upper[i]))
          throw InvalidDomain("box bounds must be finite");
        if (!(b.lower[i] < b.upper[i]))
          throw InvalidDomain("box requires lower < upper on axis " + std::to_string(i));
      }
      return;
    }
    const auto& vs = as_polytope().vertices;
    if (vs.size() < 3) throw InvalidDomain("polytope needs at least 3 vertices");
    for (const auto& v : vs)
      if (v.dim != 2 || !std::isfinite(v[0]) || !std::isfinite(v[1]))
        throw InvalidDomain("polytope vertices must be finite 2D points");
    double eps = epsilon_geom();
    std::size_t n = vs.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (dist2(vs[i], vs[j]) <= eps)
          throw InvalidDomain("duplicate polytope vertices");
    // Strict convexity in counter-clockwise order: every consecutive triple
    // turns strictly left.
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = vs[i];
      const Point& b = vs[(i + 1) % n];
      const Point& c = vs[(i + 2) % n];
      double cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
      if (cross <= eps * std::max(1.0, diameter()))
        throw InvalidDomain("polytope vertices must be in strictly convex CCW order");
    }
  }

  std::variant<Box, Polytope2D> kind_;
};

}  // namespace gammareg
