#pragma once

#include <cmath>
#include <vector>

#include "gammareg/convex_body.hpp"
#include "gammareg/errors.hpp"
#include "gammareg/geometry.hpp"
#include "gammareg/minimize.hpp"
#include "gammareg/point_set.hpp"
#include "gammareg/sampled.hpp"
#include "gammareg/transform.hpp"

namespace gammareg {

/// Fenchel subdifferential of h* at x*: the hull of the generalized
/// minimizers of the tilted function h - x*. Non-empty by compactness.
inline ConvexBody subdifferential(const SampledFunction& h, const AffineFunction& xstar,
                                  double tol) {
  SampledFunction t = tilt(h, xstar);
  return convex_hull(generalized_minimizers(t, tol), h.grid().dim());
}

/// Default "unique subgradient" width: body diameter at most 3 x primal
/// spacing. Exact uniqueness is unattainable on grids.
inline double default_width_tol(const SampledFunction& h) {
  return 3.0 * h.grid().max_spacing();
}

struct DifferentiabilityScan {
  PointSet ystar;                // dual nodes with an essentially unique subgradient
  std::vector<Point> gradients;  // the subgradient per ystar entry, same order
};

/// Scan the dual grid for the set Y* where h* is differentiable at grid
/// scale: the tilted minimizer body has diameter <= width_tol. The singleton
/// subgradient (vertex centroid) is retained alongside each member. The scan
/// takes the exact argmin set of the eroded tilt (tolerance 0): a unique
/// tilted minimizer then yields a body of diameter about two cells, below
/// the default width_tol of three.
inline DifferentiabilityScan differentiability_scan(const SampledFunction& h,
                                                    const DualGrid& dual, double width_tol) {
  const Grid& dg = *dual.grid;
  const int d = h.grid().dim();

  // per-dual-node results in fixed slots; the scan parallelizes without
  // affecting the collected order
  std::vector<char> keep(dg.size(), 0);
  std::vector<Point> grad(dg.size());
  detail::parallel_for(dg.size(), [&](std::size_t j) {
    const Point& p = dg.node(j);
    ConvexBody body = subdifferential(h, AffineFunction::linear(p), 0.0);
    if (body.diameter() > width_tol) return;
    Point centroid;
    centroid.dim = d;
    for (const auto& v : body.vertices)
      for (int a = 0; a < d; ++a) centroid[a] += v[a] / static_cast<double>(body.size());
    keep[j] = 1;
    grad[j] = centroid;
  });

  std::vector<std::pair<Point, Point>> found;
  for (std::size_t j = 0; j < dg.size(); ++j)
    if (keep[j]) found.emplace_back(dg.node(j), grad[j]);
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  DifferentiabilityScan scan;
  std::vector<Point> ps;
  for (auto& [p, gr] : found) {
    ps.push_back(p);
    scan.gradients.push_back(gr);
  }
  scan.ystar = PointSet(ps, 0.0);  // dual nodes are distinct already
  return scan;
}

struct LimitingGradients {
  std::vector<PointSet> per_radius;  // T_{x*,V_r} for each radius
  PointSet intersection;             // discrete T_{x*}
};

/// T-sets: gradients of nearby differentiability points, per shrinking dual
/// neighborhood, and their intersection surrogate (membership matched within
/// 2 x primal spacing).
inline LimitingGradients limiting_gradients(const SampledFunction& h,
                                            const AffineFunction& xstar,
                                            const std::vector<double>& radii,
                                            const DifferentiabilityScan& scan) {
  const Grid& g = h.grid();
  double dual_eps = g.domain().epsilon_geom();
  for (std::size_t k = 0; k + 1 < radii.size(); ++k)
    if (!(radii[k] > radii[k + 1])) throw Error("radii must be strictly decreasing");

  LimitingGradients out;
  for (double r : radii) {
    std::vector<Point> grads;
    for (std::size_t i = 0; i < scan.ystar.size(); ++i)
      if (dist2(scan.ystar[i], xstar.slope) < r) grads.push_back(scan.gradients[i]);
    out.per_radius.emplace_back(std::move(grads), dual_eps);
  }
  double match = 2.0 * g.max_spacing();
  std::vector<Point> common;
  if (!out.per_radius.empty()) {
    for (const auto& p : out.per_radius.back()) {
      bool everywhere = true;
      for (const auto& t : out.per_radius)
        if (!t.contains(p, match)) everywhere = false;
      if (everywhere) common.push_back(p);
    }
  }
  out.intersection = PointSet(std::move(common), dual_eps);
  return out;
}

inline LimitingGradients limiting_gradients(const SampledFunction& h,
                                            const AffineFunction& xstar,
                                            const std::vector<double>& radii) {
  DualGrid dual = build_dual_grid(h);
  double dual_spacing = dual.grid->max_spacing();
  for (double r : radii)
    if (r < dual_spacing)
      throw RadiusBelowResolution("radius below the dual grid resolution");
  auto scan = differentiability_scan(h, dual, default_width_tol(h));
  return limiting_gradients(h, xstar, radii, scan);
}

struct CorollaryLRReport {
  bool included;   // every subdifferential vertex lies in co(T) within 2dx
  double excess;   // worst violation distance
  std::vector<std::size_t> ystar_count_per_radius;
};

/// The subdifferential of h* at x* against the hull of the limiting-gradient
/// set. The density hypothesis (Y* meets every tested neighborhood) is
/// checked, never assumed.
inline CorollaryLRReport check_corollary_LR(const SampledFunction& h,
                                            const AffineFunction& xstar,
                                            const std::vector<double>& radii) {
  DualGrid dual = build_dual_grid(h);
  double dual_spacing = dual.grid->max_spacing();
  for (double r : radii)
    if (r < dual_spacing)
      throw RadiusBelowResolution("radius below the dual grid resolution");
  auto scan = differentiability_scan(h, dual, default_width_tol(h));
  auto lim = limiting_gradients(h, xstar, radii, scan);

  CorollaryLRReport rep;
  for (const auto& t : lim.per_radius) {
    rep.ystar_count_per_radius.push_back(t.size());
    if (t.empty())
      throw DensityHypothesisFails("a tested neighborhood contains no Y* point");
  }

  ConvexBody sub = subdifferential(h, xstar, 0.0);  // same footing as the scan
  ConvexBody cot = convex_hull(lim.intersection, h.grid().dim());
  rep.excess = 0.0;
  for (const auto& v : sub.vertices)
    rep.excess = std::max(rep.excess, distance_to_body(cot, v));
  rep.included = rep.excess <= 2.0 * h.grid().max_spacing();
  return rep;
}

}  // namespace gammareg
