#pragma once

#include <cmath>
#include <vector>

#include "gammareg/convex_body.hpp"
#include "gammareg/errors.hpp"
#include "gammareg/geometry.hpp"
#include "gammareg/measure.hpp"
#include "gammareg/point_set.hpp"
#include "gammareg/sampled.hpp"
#include "gammareg/transform.hpp"

namespace gammareg {

/// Default minimizer tolerance: finite-difference Lipschitz estimate times
/// the grid spacing.
inline double default_minimizer_tol(const SampledFunction& h) {
  return lipschitz_estimate(h) * h.grid().max_spacing();
}

/// Generalized minimizers: nodes where the lsc-hull surrogate comes within
/// tol of inf h. Limit points of approximating minimizers reduce to
/// minimizers of h_0, which is what the lsc route computes.
inline PointSet generalized_minimizers_from(const SampledFunction& lsc, double inf_h,
                                            double tol) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < lsc.size(); ++i) {
    ExtReal v = lsc.value(i);
    if (v.finite() && v.value() <= inf_h + tol) pts.push_back(lsc.grid().node(i));
  }
  return PointSet(std::move(pts), lsc.grid().domain().epsilon_geom());
}

inline PointSet generalized_minimizers(const SampledFunction& h, double tol) {
  if (tol < 0.0) throw Error("tol must be >= 0");
  return generalized_minimizers_from(lsc_hull(h), infimum(h).value(), tol);
}

/// Minimizer body of the envelope: hull of the nodes where envelope_hull(h)
/// comes within tol of its minimum.
inline ConvexBody envelope_minimizers_from(const SampledFunction& env, double tol) {
  double inf_env = infimum(env).value();
  std::vector<Point> pts;
  for (std::size_t i = 0; i < env.size(); ++i) {
    ExtReal v = env.value(i);
    if (v.finite() && v.value() <= inf_env + tol) pts.push_back(env.grid().node(i));
  }
  return convex_hull(pts, env.grid().dim());
}

inline ConvexBody envelope_minimizers(const SampledFunction& h, double tol) {
  if (tol < 0.0) throw Error("tol must be >= 0");
  return envelope_minimizers_from(envelope_hull(h), tol);
}

struct Theorem1Report {
  double inf_gap;  // |inf h - inf Gamma(h)|
  double set_gap;  // hausdorff(M, co(Omega))
};

/// inf h(K) = inf Gamma(h)(K) and M = co(Omega(h,K)), both measured.
inline Theorem1Report check_theorem1(const SampledFunction& h, double tol) {
  SampledFunction env = envelope_hull(h);
  SampledFunction lsc = lsc_hull(h);
  double inf_h = infimum(h).value();
  Theorem1Report r{};
  r.inf_gap = std::abs(inf_h - infimum(env).value());
  ConvexBody m = envelope_minimizers_from(env, tol);
  PointSet omega = generalized_minimizers_from(lsc, inf_h, tol);
  r.set_gap = hausdorff(m, convex_hull(omega, h.grid().dim()));
  return r;
}

struct Theorem3Report {
  struct Violation {
    Point vertex;
    double distance;
  };
  std::vector<Violation> violations;
  double max_distance = 0.0;
  bool strict_inclusion = false;  // some Omega point is not a vertex of M
};

/// Every extreme point of M must lie within 2 x spacing of Omega.
inline Theorem3Report check_theorem3_extreme(const SampledFunction& h, double tol) {
  SampledFunction env = envelope_hull(h);
  SampledFunction lsc = lsc_hull(h);
  double inf_h = infimum(h).value();
  ConvexBody m = envelope_minimizers_from(env, tol);
  PointSet omega = generalized_minimizers_from(lsc, inf_h, tol);
  double bound = 2.0 * h.grid().max_spacing();

  Theorem3Report rep;
  PointSet em = extreme_points(m);
  for (const auto& v : em) {
    double dmin = omega.min_dist(v);
    rep.max_distance = std::max(rep.max_distance, dmin);
    if (dmin > bound) rep.violations.push_back({v, dmin});
  }
  for (const auto& w : omega)
    if (em.min_dist(w) > bound) rep.strict_inclusion = true;
  return rep;
}

/// Restriction of h to the nodes of a convex body: everything else becomes
/// +inf (the trivial extension; node identity is preserved). Returns the
/// number of finite nodes kept through `kept`.
inline SampledFunction restrict_to_body(const SampledFunction& h, const ConvexBody& body,
                                        std::size_t* kept = nullptr) {
  double eps = h.grid().domain().epsilon_geom();
  std::vector<ExtReal> vals(h.size(), ExtReal::infinity());
  std::size_t n = 0;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (contains(body, h.grid().node(i), eps) && h.value(i).finite()) {
      vals[i] = h.value(i);
      ++n;
    }
  if (kept) *kept = n;
  if (n == 0) throw AllInfinite("restriction keeps no finite node");
  return SampledFunction(h.grid_ptr(), std::move(vals));
}

struct ExhaustionReport {
  PointSet recovered;
  std::vector<bool> gate_passed;      // per family member
  std::vector<double> restricted_inf; // per family member
};

/// Nested exhaustion: for each K_M in the family (each must sit inside M),
/// re-minimize the restricted envelope and keep E(M_{K_M}) whenever
/// inf h(K_M) matches inf h within tol.
inline ExhaustionReport nested_exhaustion(const SampledFunction& h,
                                          const std::vector<ConvexBody>& family, double tol) {
  const Grid& g = h.grid();
  double geo_tol = 2.0 * g.max_spacing();
  ConvexBody m = envelope_minimizers(h, tol);
  for (const auto& body : family)
    for (const auto& v : body.vertices)
      if (!contains(m, v, geo_tol))
        throw SubsetNotInM("family member is not contained in the envelope minimizer body");

  double inf_h = infimum(h).value();
  ExhaustionReport rep;
  std::vector<Point> collected;
  for (const auto& body : family) {
    std::size_t kept = 0;
    SampledFunction hr = restrict_to_body(h, body, &kept);
    double inf_r = infimum(hr).value();
    rep.restricted_inf.push_back(inf_r);
    bool pass = std::abs(inf_r - inf_h) <= tol;
    rep.gate_passed.push_back(pass);
    if (!pass) continue;
    ConvexBody mr = envelope_minimizers(hr, tol);
    for (const auto& v : mr.vertices) collected.push_back(v);
  }
  rep.recovered = PointSet(std::move(collected), g.domain().epsilon_geom());
  return rep;
}

inline PointSet nested_exhaustion_points(const SampledFunction& h,
                                         const std::vector<ConvexBody>& family, double tol) {
  return nested_exhaustion(h, family, tol).recovered;
}

/// Representing measure of Gamma(h) at a node: the facet of the lifted lower
/// hull above the node, so the barycenter is the node and the measure
/// integrates h to Gamma(h)(node).
inline DiscreteMeasure representing_measure(const SampledFunction& h, std::size_t node) {
  const Grid& g = h.grid();
  std::vector<std::pair<Point, ExtReal>> support;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (h.value(i).finite()) support.emplace_back(g.node(i), h.value(i));
  return caratheodory(support, g.node(node));
}

}  // namespace gammareg
