#pragma once

#include <vector>

#include "gammareg/point.hpp"

namespace gammareg {

/// Finite-vertex representation of a compact convex set: the deduplicated
/// extreme points in canonical order (1D ascending; 2D counter-clockwise
/// starting from the lexicographic minimum; 3D lexicographic).
///
/// Construct through geometry::convex_hull, which guarantees the vertex-set
/// invariants; this type is a plain container.
struct ConvexBody {
  std::vector<Point> vertices;
  int dim = 1;

  bool empty() const { return vertices.empty(); }
  std::size_t size() const { return vertices.size(); }

  /// Max pairwise vertex distance (diameter of the body).
  double diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        best = std::max(best, dist2(vertices[i], vertices[j]));
    return best;
  }
};

}  // namespace gammareg
