#pragma once

#include <cmath>
#include <limits>

#include "gammareg/errors.hpp"
#include "gammareg/sampled.hpp"

namespace gammareg {

struct ConvexityReport {
  bool is_grid_convex;
  double worst_violation;  // most negative midpoint-convexity slack (0 if none)
};

/// Discrete midpoint convexity along every lattice line:
/// h(x_{i-1}) + h(x_{i+1}) >= 2 h(x_i) - 1e-9 on finite triples, and the
/// finite nodes of every line must form a contiguous run (a +inf gap between
/// finite values is a non-convex effective domain, reported as -inf slack).
/// Polytope vertex nodes sit off-lattice and are skipped.
inline ConvexityReport check_convexity(const SampledFunction& h) {
  const Grid& g = h.grid();
  const int d = g.dim();
  double worst = 0.0;

  int na[3] = {1, 1, 1};
  for (int a = 0; a < d; ++a) na[a] = g.axis_size(a);
  for (int axis = 0; axis < d; ++axis) {
    int n_line[3] = {1, 1, 1};
    for (int a = 0; a < d; ++a)
      if (a != axis) n_line[a] = na[a];
    int idx[3] = {0, 0, 0};
    bool more = true;
    while (more) {
      int prev1 = -1, prev2 = -1;  // last two present nodes on the line
      bool seen_finite = false, gap_after_finite = false;
      for (int i = 0; i < na[axis]; ++i) {
        int mi[3] = {idx[0], idx[1], idx[2]};
        mi[axis] = i;
        int id = g.lattice_node(mi[0], mi[1], mi[2]);
        if (id < 0) continue;
        ExtReal v = h.value(static_cast<std::size_t>(id));
        if (v.finite()) {
          if (gap_after_finite) worst = -std::numeric_limits<double>::infinity();
          seen_finite = true;
        } else if (seen_finite) {
          gap_after_finite = true;
        }
        if (prev2 >= 0) {
          ExtReal l = h.value(static_cast<std::size_t>(prev2));
          ExtReal m = h.value(static_cast<std::size_t>(prev1));
          if (l.finite() && m.finite() && v.finite())
            worst = std::min(worst, l.value() + v.value() - 2.0 * m.value());
        }
        prev2 = prev1;
        prev1 = id;
      }
      more = false;
      for (int a = d - 1; a >= 0; --a) {
        if (a == axis) continue;
        if (++idx[a] < n_line[a]) {
          more = true;
          break;
        }
        idx[a] = 0;
      }
    }
  }
  return {worst >= -1e-9, worst};
}

struct BauerReport {
  double sup_all;      // sup of h- + h+ over all nodes
  double sup_extreme;  // sup over the domain extreme-point nodes
  double gap;          // sup_all - sup_extreme, in [0, L x spacing]
  double lipschitz;    // summed finite-difference Lipschitz estimates
};

/// Extended Bauer maximum principle at grid scale: the sum of two grid-convex
/// functions is maximized at extreme-point nodes up to one modulus of
/// continuity. On finite grids semicontinuity is vacuous, so convexity of
/// both summands is the operative hypothesis and is checked, not assumed.
inline BauerReport check_bauer(const SampledFunction& h_minus, const SampledFunction& h_plus) {
  if (&h_minus.grid() != &h_plus.grid())
    throw DimensionMismatch("check_bauer requires both functions on one grid");
  if (!check_convexity(h_minus).is_grid_convex)
    throw ConvexityHypothesisFails("h- is not grid-convex");
  if (!check_convexity(h_plus).is_grid_convex)
    throw ConvexityHypothesisFails("h+ is not grid-convex");

  const Grid& g = h_minus.grid();
  ExtReal sup_all(-0.0);
  bool first = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    ExtReal s = h_minus.value(i) + h_plus.value(i);
    if (first || s > sup_all) sup_all = s;
    first = false;
  }

  double eps = g.domain().epsilon_geom();
  ExtReal sup_ext = ExtReal(0.0);
  bool found = false;
  for (const auto& e : g.domain().extreme_points()) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (dist2(g.node(i), e) > eps) continue;
      ExtReal s = h_minus.value(i) + h_plus.value(i);
      if (!found || s > sup_ext) sup_ext = s;
      found = true;
      break;
    }
  }
  if (!found) throw Error("no extreme-point node found");

  BauerReport rep{};
  rep.sup_all = sup_all.value();
  rep.sup_extreme = sup_ext.value();
  rep.gap = rep.sup_all - rep.sup_extreme;
  rep.lipschitz = lipschitz_estimate(h_minus) + lipschitz_estimate(h_plus);
  return rep;
}

}  // namespace gammareg
