#pragma once

#include <algorithm>
#include <vector>

#include "gammareg/point.hpp"

namespace gammareg {

/// A finite point set in canonical form: lexicographically sorted and
/// deduplicated within a tolerance (greedy after sorting).
class PointSet {
public:
  PointSet() = default;
  PointSet(std::vector<Point> points, double dedup_tol) {
    std::sort(points.begin(), points.end(), lex_less);
    for (const auto& p : points) {
      bool dup = false;
      for (auto it = points_.rbegin(); it != points_.rend(); ++it) {
        if (p[0] - (*it)[0] > dedup_tol) break;
        if (dist2(p, *it) <= dedup_tol) {
          dup = true;
          break;
        }
      }
      if (!dup) points_.push_back(p);
    }
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Distance from x to the nearest member (+inf when empty).
  double min_dist(const Point& x) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points_) best = std::min(best, dist2(p, x));
    return best;
  }

  bool contains(const Point& x, double tol) const { return min_dist(x) <= tol; }

private:
  std::vector<Point> points_;
};

}  // namespace gammareg
