#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "gammareg/affine.hpp"
#include "gammareg/convex_body.hpp"
#include "gammareg/errors.hpp"
#include "gammareg/ext_real.hpp"
#include "gammareg/measure.hpp"
#include "gammareg/mnp.hpp"
#include "gammareg/point.hpp"
#include "gammareg/point_set.hpp"
#include "gammareg/seidel.hpp"

namespace gammareg {

namespace detail {

inline double bbox_diameter(const std::vector<Point>& pts) {
  if (pts.empty()) return 0.0;
  double s = 0.0;
  for (int a = 0; a < pts.front().dim; ++a) {
    double lo = pts.front()[a], hi = lo;
    for (const auto& p : pts) {
      lo = std::min(lo, p[a]);
      hi = std::max(hi, p[a]);
    }
    s += (hi - lo) * (hi - lo);
  }
  return std::sqrt(s);
}

inline double cross2(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Andrew's monotone chain; drops collinear boundary points within thr.
/// Returns vertices in CCW order starting at the lexicographic minimum.
inline std::vector<Point> chain_hull_2d(std::vector<Point> pts, double thr) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) {
                          return a[0] == b[0] && a[1] == b[1];
                        }),
            pts.end());
  std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= thr) --k;
    hull[k++] = pts[i];
  }
  std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= thr) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline double segment_distance(const Point& x, const Point& a, const Point& b) {
  Point d = b - a;
  double dd = dot(d, d);
  if (dd == 0.0) return dist2(x, a);
  double t = dot(x - a, d) / dd;
  t = std::clamp(t, 0.0, 1.0);
  return dist2(x, a + t * d);
}

/// Distance from a point to a CCW convex polygon (0 when inside).
inline double polygon_distance(const Point& x, const std::vector<Point>& vs) {
  std::size_t n = vs.size();
  bool inside = true;
  for (std::size_t i = 0; i < n && inside; ++i)
    if (cross2(vs[i], vs[(i + 1) % n], x) < 0.0) inside = false;
  if (inside) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, segment_distance(x, vs[i], vs[(i + 1) % n]));
  return best;
}

/// Indices of the 1D lower-hull vertices of (xs, vs), xs strictly increasing.
/// Points collinear with their hull neighbors are kept, so convex inputs keep
/// every node on the hull.
inline std::vector<std::size_t> lower_hull_1d(const std::vector<double>& xs,
                                              const std::vector<double>& vs) {
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (hull.size() >= 2) {
      std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      // pop b when it lies strictly above chord a..i
      double s = (xs[i] - xs[a]) * (vs[b] - vs[a]) - (xs[b] - xs[a]) * (vs[i] - vs[a]);
      if (s > 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  return hull;
}

}  // namespace detail

/// Distance from x to a convex body (exact for 1D/2D; min-norm point in 3D).
inline double distance_to_body(const ConvexBody& body, const Point& x) {
  if (body.empty()) return std::numeric_limits<double>::infinity();
  if (x.dim != body.dim) throw DimensionMismatch("point/body dimension mismatch");
  if (body.size() == 1) return dist2(x, body.vertices[0]);
  if (body.dim == 1) {
    double lo = body.vertices.front()[0], hi = body.vertices.back()[0];
    return std::max({0.0, lo - x[0], x[0] - hi});
  }
  if (body.dim == 2) {
    if (body.size() == 2) return detail::segment_distance(x, body.vertices[0], body.vertices[1]);
    return detail::polygon_distance(x, body.vertices);
  }
  return detail::MinNormPoint::distance(x, body.vertices);
}

/// Hull of a finite point set; vertices are exactly the extreme points
/// (collinear/coplanar boundary points removed within 1e-9 x diameter).
inline ConvexBody convex_hull(const std::vector<Point>& points, int dim) {
  if (points.empty()) throw Error("convex hull of an empty set");
  for (const auto& p : points)
    if (p.dim != dim) throw DimensionMismatch("point dimension mismatch in convex_hull");

  double diam = detail::bbox_diameter(points);
  double eps_len = 1e-9 * diam;
  ConvexBody body;
  body.dim = dim;

  if (dim == 1) {
    double lo = points.front()[0], hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    body.vertices.push_back(Point(lo));
    if (hi - lo > eps_len) body.vertices.push_back(Point(hi));
    return body;
  }

  if (dim == 2) {
    PointSet dedup(points, eps_len);
    body.vertices = detail::chain_hull_2d(dedup.points(), 1e-9 * diam * diam);
    return body;
  }

  // 3D: keep points that are not convex combinations of the others.
  PointSet dedup(points, eps_len);
  const auto& pts = dedup.points();
  if (pts.size() <= 2) {
    body.vertices = pts;
    return body;
  }
  std::vector<Point> others;
  others.reserve(pts.size() - 1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    others.clear();
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) others.push_back(pts[j]);
    if (detail::MinNormPoint::distance(pts[i], others) > eps_len)
      body.vertices.push_back(pts[i]);
  }
  if (body.vertices.empty()) body.vertices.push_back(pts.front());
  std::sort(body.vertices.begin(), body.vertices.end(), lex_less);
  return body;
}

inline ConvexBody convex_hull(const PointSet& points, int dim) {
  return convex_hull(points.points(), dim);
}

/// Vertices of the body, i.e. its extreme points.
inline PointSet extreme_points(const ConvexBody& body) {
  double diam = detail::bbox_diameter(body.vertices);
  return PointSet(body.vertices, 1e-9 * diam);
}

/// True iff distance from x to the body is <= tol.
inline bool contains(const ConvexBody& body, const Point& x, double tol) {
  if (tol < 0.0) throw Error("contains requires tol >= 0");
  return distance_to_body(body, x) <= tol;
}

/// Symmetric Hausdorff distance between convex bodies. The distance function
/// to a convex set is convex, so both one-sided suprema are attained at
/// vertices; vertex-to-body distances give the exact value. sample_density is
/// accepted for interface compatibility and validated only.
inline double hausdorff(const ConvexBody& a, const ConvexBody& b, int sample_density = 64) {
  if (a.dim != b.dim) throw DimensionMismatch("hausdorff dimension mismatch");
  if (sample_density < 1) throw Error("sample_density must be >= 1");
  if (a.empty() || b.empty()) throw Error("hausdorff of an empty body");
  double m = 0.0;
  for (const auto& v : a.vertices) m = std::max(m, distance_to_body(b, v));
  for (const auto& v : b.vertices) m = std::max(m, distance_to_body(a, v));
  return m;
}

// ---------------------------------------------------------------------------
// Supporting affine minorants and Caratheodory decompositions on lifted data.
// ---------------------------------------------------------------------------

namespace detail {

struct MinorantResult {
  AffineFunction m;
  double value;  // m(x)
};

/// Best affine minorant of the data {(p_j, v_j)} evaluated at x:
/// maximize a.x + t subject to a.p_j + t <= v_j. The box bound is generous;
/// callers guarantee x lies in the hull of the p_j so the LP is bounded.
inline MinorantResult supporting_minorant(const std::vector<Point>& pts,
                                          const std::vector<double>& vals, const Point& x,
                                          std::uint64_t seed) {
  const int d = x.dim;
  double vmin = vals.front(), vmax = vals.front();
  for (double v : vals) {
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  double diam = std::max(bbox_diameter(pts), 1e-300);
  double max_abs_x = 0.0;
  for (const auto& p : pts)
    for (int k = 0; k < d; ++k) max_abs_x = std::max(max_abs_x, std::abs(p[k]));
  double b_slope = 1e6 * (1.0 + (vmax - vmin) / diam);
  double b_icept = 1e6 * (1.0 + std::abs(vmax) + std::abs(vmin)) + b_slope * (max_abs_x + 1.0);

  std::vector<SeidelLP::Row> rows(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    SeidelLP::Row r{};
    for (int k = 0; k < d; ++k) r.a[static_cast<std::size_t>(k)] = pts[j][k];
    r.a[static_cast<std::size_t>(d)] = 1.0;
    r.b = vals[j];
    rows[j] = r;
  }
  std::array<double, 3> c{}, lo{}, hi{};
  for (int k = 0; k < d; ++k) {
    c[static_cast<std::size_t>(k)] = x[k];
    lo[static_cast<std::size_t>(k)] = -b_slope;
    hi[static_cast<std::size_t>(k)] = b_slope;
  }
  c[static_cast<std::size_t>(d)] = 1.0;
  lo[static_cast<std::size_t>(d)] = -b_icept;
  hi[static_cast<std::size_t>(d)] = b_icept;

  auto z = SeidelLP::solve(d + 1, rows, c, lo, hi, seed);
  MinorantResult res;
  res.m.slope.dim = d;
  for (int k = 0; k < d; ++k) res.m.slope[k] = z[static_cast<std::size_t>(k)];
  res.m.intercept = z[static_cast<std::size_t>(d)];
  // Re-anchor so the minorant property holds exactly on the data.
  double worst = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j)
    worst = std::max(worst, res.m(pts[j]) - vals[j]);
  if (worst > 0.0) res.m.intercept -= worst;
  res.value = res.m(x);
  return res;
}

}  // namespace detail

/// Representing measure of x on the lower convex hull of lifted data: the
/// facet of conv{(p_j, v_j)} above x gives <= dim+1 support points whose
/// barycenter is x and whose value-average is the hull height at x.
inline DiscreteMeasure caratheodory(const std::vector<std::pair<Point, ExtReal>>& support,
                                    const Point& x) {
  if (support.empty()) throw Error("caratheodory needs a non-empty support");
  const int d = x.dim;
  if (d > 2) throw DimensionTooHigh("caratheodory supports dim <= 2");
  std::vector<Point> pts;
  std::vector<double> vals;
  pts.reserve(support.size());
  for (const auto& [p, v] : support) {
    if (p.dim != d) throw DimensionMismatch("support point dimension mismatch");
    if (!v.finite()) throw Error("caratheodory support values must be finite");
    pts.push_back(p);
    vals.push_back(v.value());
  }

  double diam = std::max(detail::bbox_diameter(pts), 1e-300);
  double eps_len = 1e-9 * diam;

  if (d == 1) {
    // sort by coordinate, collapse duplicate abscissae onto the lower value
    std::vector<std::size_t> ord(pts.size());
    for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(),
              [&](std::size_t a, std::size_t b) { return pts[a][0] < pts[b][0]; });
    std::vector<double> xs, vs;
    for (std::size_t i : ord) {
      if (!xs.empty() && pts[i][0] - xs.back() <= eps_len) {
        vs.back() = std::min(vs.back(), vals[i]);
        continue;
      }
      xs.push_back(pts[i][0]);
      vs.push_back(vals[i]);
    }
    if (x[0] < xs.front() - eps_len || x[0] > xs.back() + eps_len)
      throw OutsideHull("point lies outside the support hull");
    auto hull = detail::lower_hull_1d(xs, vs);
    // bracketing hull segment
    std::size_t k = 0;
    while (k + 1 < hull.size() && xs[hull[k + 1]] < x[0]) ++k;
    std::size_t ia = hull[k], ib = hull[std::min(k + 1, hull.size() - 1)];
    if (std::abs(x[0] - xs[ia]) <= eps_len || ia == ib)
      return DiscreteMeasure({{Point(xs[ia]), 1.0}});
    if (std::abs(x[0] - xs[ib]) <= eps_len)
      return DiscreteMeasure({{Point(xs[ib]), 1.0}});
    double t = (x[0] - xs[ia]) / (xs[ib] - xs[ia]);
    return DiscreteMeasure({{Point(xs[ia]), 1.0 - t}, {Point(xs[ib]), t}});
  }

  // 2D: membership pre-test makes the supporting-minorant LP bounded.
  ConvexBody hull = convex_hull(pts, 2);
  if (!contains(hull, x, eps_len)) throw OutsideHull("point lies outside the support hull");

  double vscale = 1.0;
  for (double v : vals) vscale = std::max(vscale, std::abs(v));
  auto lifted = detail::supporting_minorant(pts, vals, x, 0x5eed0001ULL);

  for (double widen = 1.0; widen <= 1e4; widen *= 100.0) {
    double eps_act = 1e-9 * vscale * widen;
    std::vector<Point> act;
    std::vector<double> act_v;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (vals[j] - lifted.m(pts[j]) <= eps_act) {
        act.push_back(pts[j]);
        act_v.push_back(vals[j]);
      }
    // the queried point itself on the hull
    for (std::size_t j = 0; j < act.size(); ++j)
      if (dist2(act[j], x) <= eps_len) return DiscreteMeasure({{act[j], 1.0}});
    if (act.size() < 2) continue;

    // collinear active set: decompose along the extreme pair
    std::size_t imin = 0, imax = 0;
    for (std::size_t j = 1; j < act.size(); ++j) {
      if (lex_less(act[j], act[imin])) imin = j;
      if (lex_less(act[imax], act[j])) imax = j;
    }
    Point dir = act[imax] - act[imin];
    double len = norm2(dir);
    bool collinear = true;
    if (len > eps_len) {
      for (const auto& p : act)
        if (std::abs(detail::cross2(act[imin], act[imax], p)) > eps_len * len) {
          collinear = false;
          break;
        }
    }
    if (collinear) {
      if (len <= eps_len) continue;
      double sx = dot(x - act[imin], dir) / (len * len);
      // bracket sx among active abscissae
      double best_lo = -1e300, best_hi = 1e300;
      std::size_t ilo = imin, ihi = imax;
      for (std::size_t j = 0; j < act.size(); ++j) {
        double s = dot(act[j] - act[imin], dir) / (len * len);
        if (s <= sx + 1e-12 && s > best_lo) {
          best_lo = s;
          ilo = j;
        }
        if (s >= sx - 1e-12 && s < best_hi) {
          best_hi = s;
          ihi = j;
        }
      }
      if (ilo == ihi) return DiscreteMeasure({{act[ilo], 1.0}});
      double t = (sx - best_lo) / (best_hi - best_lo);
      t = std::clamp(t, 0.0, 1.0);
      return DiscreteMeasure({{act[ilo], 1.0 - t}, {act[ihi], t}});
    }

    // full-dimensional facet: fan-triangulate its hull and locate x
    ConvexBody fh = convex_hull(act, 2);
    const auto& v = fh.vertices;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      const Point &A = v[0], &B = v[i], &C = v[i + 1];
      double det = (B[0] - A[0]) * (C[1] - A[1]) - (C[0] - A[0]) * (B[1] - A[1]);
      if (std::abs(det) <= eps_len * eps_len) continue;
      double wb = ((x[0] - A[0]) * (C[1] - A[1]) - (C[0] - A[0]) * (x[1] - A[1])) / det;
      double wc = ((B[0] - A[0]) * (x[1] - A[1]) - (x[0] - A[0]) * (B[1] - A[1])) / det;
      double wa = 1.0 - wb - wc;
      double slack = 1e-10;
      if (wa < -slack || wb < -slack || wc < -slack) continue;
      wa = std::max(wa, 0.0);
      wb = std::max(wb, 0.0);
      wc = std::max(wc, 0.0);
      double s = wa + wb + wc;
      std::vector<DiscreteMeasure::Atom> atoms;
      if (wa / s > 1e-14) atoms.push_back({A, wa / s});
      if (wb / s > 1e-14) atoms.push_back({B, wb / s});
      if (wc / s > 1e-14) atoms.push_back({C, wc / s});
      return DiscreteMeasure(std::move(atoms));
    }
  }
  throw Error("caratheodory: failed to locate a facet above the query point");
}

}  // namespace gammareg
