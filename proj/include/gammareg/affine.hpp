#pragma once

#include <vector>

#include "gammareg/point.hpp"

namespace gammareg {

/// m(x) = slope . x + intercept. Linear functionals (dual points x*) are
/// affine functions with zero intercept.
struct AffineFunction {
  Point slope;
  double intercept = 0.0;

  AffineFunction() = default;
  AffineFunction(Point s, double b) : slope(s), intercept(b) {}

  static AffineFunction linear(Point s) { return AffineFunction(s, 0.0); }

  double operator()(const Point& x) const { return dot(slope, x) + intercept; }

  AffineFunction negated() const {
    AffineFunction m = *this;
    for (int i = 0; i < m.slope.dim; ++i) m.slope[i] = -m.slope[i];
    m.intercept = -m.intercept;
    return m;
  }
};

}  // namespace gammareg
