#pragma once

#include <cmath>
#include <vector>

#include "gammareg/errors.hpp"
#include "gammareg/point.hpp"

namespace gammareg {

/// A finitely supported probability measure: distinct points with
/// non-negative weights summing to 1 within 1e-12.
class DiscreteMeasure {
public:
  struct Atom {
    Point point;
    double weight;
  };

  explicit DiscreteMeasure(std::vector<Atom> support) : support_(std::move(support)) {
    double s = 0.0;
    for (const auto& a : support_) {
      if (a.weight < 0.0) throw Error("measure weight is negative");
      s += a.weight;
    }
    if (std::abs(s - 1.0) > 1e-12) throw Error("measure weights do not sum to 1");
  }

  const std::vector<Atom>& support() const { return support_; }
  std::size_t size() const { return support_.size(); }

  Point barycenter() const {
    Point b;
    b.dim = support_.front().point.dim;
    for (const auto& a : support_)
      for (int i = 0; i < b.dim; ++i) b[i] += a.weight * a.point[i];
    return b;
  }

  /// Integral of the values paired with the support points.
  double integral(const std::vector<double>& values) const {
    double s = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) s += support_[i].weight * values[i];
    return s;
  }

private:
  std::vector<Atom> support_;
};

}  // namespace gammareg
