#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "gammareg/affine.hpp"
#include "gammareg/errors.hpp"
#include "gammareg/geometry.hpp"
#include "gammareg/grid.hpp"
#include "gammareg/parallel.hpp"
#include "gammareg/sampled.hpp"

namespace gammareg {

/// A box grid over slope space, housing the dual points x*. Bounds cover the
/// primal data's finite-difference slope range per axis, padded by one
/// spacing unit, so discrete conjugates never clip subgradients.
struct DualGrid {
  GridPtr grid;
};

/// Default dual resolution: 4x the primal resolution per axis (always even,
/// so slope 0 is a dual node whenever the slope bounds are symmetric).
inline std::vector<int> default_dual_resolution(const Grid& primal) {
  std::vector<int> res;
  for (int r : primal.resolution()) res.push_back(4 * r);
  return res;
}

/// Explicit dual-bounds computation (tested on its own): signed min/max
/// finite-difference slope per axis, degenerate ranges widened to +-1,
/// then padded by one prospective spacing unit.
inline void dual_bounds(const SampledFunction& h, const std::vector<int>& resolution,
                        std::vector<double>& lo, std::vector<double>& hi) {
  slope_bounds(h, lo, hi);
  const int d = h.grid().dim();
  for (int a = 0; a < d; ++a) {
    auto as = static_cast<std::size_t>(a);
    if (hi[as] - lo[as] < 1e-12 * (1.0 + std::abs(hi[as]))) {
      lo[as] -= 1.0;
      hi[as] += 1.0;
    }
    double pad = (hi[as] - lo[as]) / resolution[as];
    lo[as] -= pad;
    hi[as] += pad;
  }
}

inline DualGrid build_dual_grid(const SampledFunction& h, std::vector<int> resolution = {}) {
  if (resolution.empty()) resolution = default_dual_resolution(h.grid());
  std::vector<double> lo, hi;
  dual_bounds(h, resolution, lo, hi);
  return DualGrid{build_grid(Domain::box(lo, hi), resolution)};
}

namespace detail {

/// Accumulate p.x - hv in the fixed association p0*x0 + (p1*x1 + (p2*x2 - hv)).
/// The fast transform composes per-axis passes in exactly this order, so the
/// two routes agree to rounding.
inline double conj_term(const Point& p, const Point& x, double hv) {
  double acc = -hv;
  for (int a = p.dim - 1; a >= 0; --a) acc = p[a] * x[a] + acc;
  return acc;
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// One-dimensional Legendre sweep: out[j] = max_i (ps[j]*xs[i] + w[i]) over
/// finite w, computed by an upper concave hull of (xs, w) and a monotone merge
/// of the sorted slope queries. O(n + m). Entries with w = -inf are absent;
/// out is -inf when every entry is absent.
inline void llt_line(const std::vector<double>& xs, const double* w, std::size_t stride_w,
                     const std::vector<double>& ps, double* out, std::size_t stride_out,
                     std::vector<int>& hull_scratch) {
  hull_scratch.clear();
  auto& hull = hull_scratch;
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i) {
    double wi = w[i * stride_w];
    if (wi == kNegInf) continue;
    while (hull.size() >= 2) {
      std::size_t a = static_cast<std::size_t>(hull[hull.size() - 2]);
      std::size_t b = static_cast<std::size_t>(hull[hull.size() - 1]);
      double wa = w[a * stride_w], wb = w[b * stride_w];
      // keep b only when strictly above chord a..i
      double s = (xs[i] - xs[a]) * (wb - wa) - (xs[b] - xs[a]) * (wi - wa);
      if (s <= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(static_cast<int>(i));
  }
  if (hull.empty()) {
    for (std::size_t j = 0; j < ps.size(); ++j) out[j * stride_out] = kNegInf;
    return;
  }
  std::size_t k = 0;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    double p = ps[j];
    auto value = [&](std::size_t hidx) {
      std::size_t i = static_cast<std::size_t>(hull[hidx]);
      return p * xs[i] + w[i * stride_w];
    };
    while (k + 1 < hull.size() && value(k + 1) >= value(k)) ++k;
    out[j * stride_out] = value(k);
  }
}

/// Iterated partial conjugation of a dense lattice array. in_axes are the
/// per-axis input coordinates, out_axes the per-axis query slopes; the value
/// array w uses row-major layout (last axis fastest) and -inf for empty.
inline std::vector<double> llt_nd(std::vector<double> w, std::vector<std::vector<double>> axes,
                                  const std::vector<std::vector<double>>& out_axes) {
  const int d = static_cast<int>(axes.size());
  std::vector<int> hull_scratch;
  for (int ax = d - 1; ax >= 0; --ax) {
    auto axs = static_cast<std::size_t>(ax);
    std::size_t before = 1, after = 1;
    for (int a = 0; a < ax; ++a) before *= axes[static_cast<std::size_t>(a)].size();
    for (int a = ax + 1; a < d; ++a) after *= axes[static_cast<std::size_t>(a)].size();
    const std::size_t n = axes[axs].size();
    const std::size_t m = out_axes[axs].size();
    std::vector<double> next(before * m * after);
    for (std::size_t b = 0; b < before; ++b)
      for (std::size_t c = 0; c < after; ++c) {
        const double* src = w.data() + (b * n * after + c);
        double* dst = next.data() + (b * m * after + c);
        llt_line(axes[axs], src, after, out_axes[axs], dst, after, hull_scratch);
      }
    w = std::move(next);
    axes[axs] = out_axes[axs];
  }
  return w;
}

/// Dense bbox-lattice image of -h (row-major, -inf where a lattice point is
/// missing or h is +inf). Off-lattice polytope vertex nodes are returned
/// separately for direct max updates.
inline void lattice_neg_values(const SampledFunction& h, std::vector<double>& w,
                               std::vector<std::size_t>& off_lattice) {
  const Grid& g = h.grid();
  const int d = g.dim();
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(g.axis_size(a));
  w.assign(total, kNegInf);
  int na[3] = {1, 1, 1};
  for (int a = 0; a < d; ++a) na[a] = g.axis_size(a);
  for (int i = 0; i < na[0]; ++i)
    for (int j = 0; j < na[1]; ++j)
      for (int k = 0; k < na[2]; ++k) {
        int id = g.lattice_node(i, j, k);
        if (id < 0) continue;
        ExtReal v = h.value(static_cast<std::size_t>(id));
        if (!v.finite()) continue;
        std::size_t flat = (static_cast<std::size_t>(i) * na[1] + j) * na[2] + k;
        w[flat] = -v.value();
      }
  off_lattice.clear();
  for (std::size_t id = g.lattice_count(); id < g.size(); ++id)
    if (h.value(id).finite()) off_lattice.push_back(id);
}

}  // namespace detail

/// Reference conjugate: h*(p) = max over finite primal nodes of (p.x - h(x)).
/// O(N*M); the oracle against which conjugate_fast is checked.
inline SampledFunction conjugate_naive(const SampledFunction& h, const DualGrid& dual) {
  const Grid& g = h.grid();
  const Grid& dg = *dual.grid;
  std::vector<ExtReal> out(dg.size());
  detail::parallel_for(dg.size(), [&](std::size_t j) {
    const Point& p = dg.node(j);
    double best = detail::kNegInf;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!h.value(i).finite()) continue;
      best = std::max(best, detail::conj_term(p, g.node(i), h.value(i).value()));
    }
    out[j] = ExtReal(best);
  });
  return SampledFunction(dual.grid, std::move(out));
}

/// Fast conjugate: per-axis 1D sweeps over the upper concave hull of the
/// lifted data merged against sorted slope queries, O(N + M) per line.
/// Polytope domains are embedded in their bounding box with +inf outside;
/// off-lattice vertex nodes enter by direct max updates.
inline SampledFunction conjugate_fast(const SampledFunction& h, const DualGrid& dual) {
  const Grid& g = h.grid();
  const Grid& dg = *dual.grid;
  const int d = g.dim();

  std::vector<double> w;
  std::vector<std::size_t> extras;
  detail::lattice_neg_values(h, w, extras);

  std::vector<std::vector<double>> axes(static_cast<std::size_t>(d)),
      out_axes(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    axes[static_cast<std::size_t>(a)] = g.axis_coords(a);
    out_axes[static_cast<std::size_t>(a)] = dg.axis_coords(a);
  }
  std::vector<double> r = detail::llt_nd(std::move(w), std::move(axes), out_axes);

  std::vector<ExtReal> out(dg.size());
  for (std::size_t j = 0; j < dg.size(); ++j) {
    double best = r[j];
    const Point& p = dg.node(j);
    for (std::size_t id : extras)
      best = std::max(best, detail::conj_term(p, g.node(id), h.value(id).value()));
    if (best == detail::kNegInf) throw AllInfinite("conjugate of an empty effective domain");
    out[j] = ExtReal(best);
  }
  return SampledFunction(dual.grid, std::move(out));
}

namespace detail {

/// Mask of primal nodes lying in the convex hull of the finite nodes; the
/// trivial extension gives the envelope the value +inf outside it.
inline std::vector<bool> effective_hull_mask(const SampledFunction& h) {
  const Grid& g = h.grid();
  std::vector<bool> inside(g.size(), true);
  bool any_inf = false;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!h.value(i).finite()) any_inf = true;
  if (!any_inf) return inside;

  std::vector<Point> finite;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (h.value(i).finite()) finite.push_back(g.node(i));
  double eps = g.domain().epsilon_geom();
  const int d = g.dim();
  if (d == 1) {
    double lo = finite.front()[0], hi = lo;
    for (const auto& p : finite) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    for (std::size_t i = 0; i < g.size(); ++i)
      inside[i] = g.node(i)[0] >= lo - eps && g.node(i)[0] <= hi + eps;
  } else if (d == 2) {
    ConvexBody hull = convex_hull(finite, 2);
    for (std::size_t i = 0; i < g.size(); ++i) inside[i] = contains(hull, g.node(i), eps);
  } else {
    for (std::size_t i = 0; i < g.size(); ++i)
      inside[i] = MinNormPoint::distance(g.node(i), finite) <= eps;
  }
  return inside;
}

/// Supporting-minorant solver for many queries against one constraint set
/// {a.x_j + t <= v_j}: an active-set simplex walk warm-started from the
/// previous query's optimal basis. Adjacent lattice queries usually share a
/// facet, so most solves certify in one scan with no pivots. Every result is
/// verified against the full constraint set; any numerical trouble falls back
/// to the seeded Seidel solve.
class MinorantWalker {
public:
  MinorantWalker(const std::vector<Point>& pts, const std::vector<double>& vals)
      : pts_(pts), vals_(vals) {
    double vmin = vals.front(), vmax = vals.front();
    for (double v : vals) {
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
    vscale_ = 1.0 + std::max(std::abs(vmin), std::abs(vmax));
    xscale_ = 1.0 + bbox_diameter(pts);
    eps_feas_ = 1e-11 * vscale_;
  }

  MinorantResult solve(const Point& q, std::uint64_t seed) {
    if (has_basis_) {
      auto res = walk(q);
      if (res) return *res;
    }
    MinorantResult res = supporting_minorant(pts_, vals_, q, seed);
    adopt_basis(res.m);
    return res;
  }

private:
  const std::vector<Point>& pts_;
  const std::vector<double>& vals_;
  double vscale_, xscale_, eps_feas_;
  int basis_[3] = {-1, -1, -1};
  bool has_basis_ = false;

  // rows of the basis system: (x0, x1, 1) . (a0, a1, t) = v
  bool basis_system(double m[3][3], double rhs[3]) const {
    for (int r = 0; r < 3; ++r) {
      const Point& p = pts_[static_cast<std::size_t>(basis_[r])];
      m[r][0] = p[0];
      m[r][1] = p[1];
      m[r][2] = 1.0;
      rhs[r] = vals_[static_cast<std::size_t>(basis_[r])];
    }
    return true;
  }

  static bool solve3(const double m_in[3][3], const double r_in[3], double out[3]) {
    double m[3][3], r[3];
    for (int i = 0; i < 3; ++i) {
      r[i] = r_in[i];
      for (int j = 0; j < 3; ++j) m[i][j] = m_in[i][j];
    }
    int perm[3] = {0, 1, 2};
    for (int c = 0; c < 3; ++c) {
      int piv = c;
      for (int i = c + 1; i < 3; ++i)
        if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
      if (piv != c) {
        for (int j = 0; j < 3; ++j) std::swap(m[c][j], m[piv][j]);
        std::swap(r[c], r[piv]);
        std::swap(perm[c], perm[piv]);
      }
      if (std::abs(m[c][c]) < 1e-300) return false;
      for (int i = c + 1; i < 3; ++i) {
        double f = m[i][c] / m[c][c];
        if (f == 0.0) continue;
        for (int j = c; j < 3; ++j) m[i][j] -= f * m[c][j];
        r[i] -= f * r[c];
      }
    }
    for (int i = 2; i >= 0; --i) {
      double s = r[i];
      for (int j = i + 1; j < 3; ++j) s -= m[i][j] * out[j];
      out[i] = s / m[i][i];
    }
    return true;
  }

  void adopt_basis(const AffineFunction& m) {
    // a well-spread triangle among the plane's tight constraints (affine
    // data makes every constraint tight, so tightness alone degenerates)
    has_basis_ = false;
    double tight_eps = 64.0 * eps_feas_;
    int p0 = -1;
    for (std::size_t j = 0; j < pts_.size(); ++j) {
      if (vals_[j] - m(pts_[j]) > tight_eps) continue;
      if (p0 < 0 || lex_less(pts_[j], pts_[static_cast<std::size_t>(p0)]))
        p0 = static_cast<int>(j);
    }
    if (p0 < 0) return;
    int p1 = -1;
    double best_d = 0.0;
    for (std::size_t j = 0; j < pts_.size(); ++j) {
      if (vals_[j] - m(pts_[j]) > tight_eps) continue;
      double d = dist2(pts_[j], pts_[static_cast<std::size_t>(p0)]);
      if (d > best_d) {
        best_d = d;
        p1 = static_cast<int>(j);
      }
    }
    if (p1 < 0) return;
    int p2 = -1;
    double best_a = 0.0;
    for (std::size_t j = 0; j < pts_.size(); ++j) {
      if (vals_[j] - m(pts_[j]) > tight_eps) continue;
      double a = std::abs(cross2(pts_[static_cast<std::size_t>(p0)],
                                 pts_[static_cast<std::size_t>(p1)], pts_[j]));
      if (a > best_a) {
        best_a = a;
        p2 = static_cast<int>(j);
      }
    }
    if (p2 < 0) return;
    basis_[0] = p0;
    basis_[1] = p1;
    basis_[2] = p2;
    if (tri_area() < 1e-12 * xscale_ * xscale_) return;
    has_basis_ = true;
  }

  double tri_area() const {
    const Point& a = pts_[static_cast<std::size_t>(basis_[0])];
    const Point& b = pts_[static_cast<std::size_t>(basis_[1])];
    const Point& c = pts_[static_cast<std::size_t>(basis_[2])];
    return std::abs(cross2(a, b, c));
  }

  /// One walk step rotates the plane about a basis edge (crossing toward the
  /// query) or pulls it down onto a violated constraint. A basis triangle
  /// containing the query whose plane is feasible is optimal by weak duality:
  /// any feasible plane m has m(q) = sum lambda m(x_b) <= sum lambda v_b.
  std::optional<MinorantResult> walk(const Point& q) {
    for (int iter = 0; iter < 128; ++iter) {
      double M[3][3], rhs[3], z[3];
      basis_system(M, rhs);
      if (!solve3(M, rhs, z)) return std::nullopt;
      const Point& A = pts_[static_cast<std::size_t>(basis_[0])];
      const Point& B = pts_[static_cast<std::size_t>(basis_[1])];
      const Point& C = pts_[static_cast<std::size_t>(basis_[2])];
      double det = cross2(A, B, C);
      if (std::abs(det) < 1e-14 * xscale_ * xscale_) return std::nullopt;
      double lam[3] = {cross2(q, B, C) / det, cross2(A, q, C) / det, cross2(A, B, q) / det};

      int out = -1;
      for (int i = 0; i < 3; ++i)
        if (lam[i] < -1e-12 && (out < 0 || lam[i] < lam[out])) out = i;

      if (out >= 0) {
        // rotate about the edge opposite vertex `out` toward q
        const Point& E0 = pts_[static_cast<std::size_t>(basis_[(out + 1) % 3])];
        const Point& E1 = pts_[static_cast<std::size_t>(basis_[(out + 2) % 3])];
        double wq = cross2(E0, E1, q);
        double sign = wq >= 0.0 ? 1.0 : -1.0;
        double theta = 1e300;
        int entering = -1;
        for (std::size_t j = 0; j < pts_.size(); ++j) {
          double w = sign * cross2(E0, E1, pts_[j]);
          if (w <= 1e-14 * xscale_ * xscale_) continue;
          double slack = vals_[j] - (pts_[j][0] * z[0] + pts_[j][1] * z[1] + z[2]);
          double t = slack / w;
          if (t < theta) {
            theta = t;
            entering = static_cast<int>(j);
          }
        }
        if (entering < 0) return std::nullopt;  // query beyond the hull edge
        basis_[out] = entering;
        continue;
      }

      // q inside the triangle: feasibility certifies optimality
      AffineFunction m(Point(z[0], z[1]), z[2]);
      double worst = 0.0;
      int violator = -1;
      for (std::size_t j = 0; j < pts_.size(); ++j) {
        double viol = m(pts_[j]) - vals_[j];
        if (viol > worst) {
          worst = viol;
          violator = static_cast<int>(j);
        }
      }
      if (worst <= eps_feas_ * 8.0) {
        if (worst > 0.0) m.intercept -= worst;
        MinorantResult res;
        res.m = m;
        res.value = m(q);
        return res;
      }
      // pull the plane down onto the violator: simplex pivot on the
      // barycentric program, leaving by ratio test
      const Point& P = pts_[static_cast<std::size_t>(violator)];
      double gam[3] = {cross2(P, B, C) / det, cross2(A, P, C) / det, cross2(A, B, P) / det};
      int leave = -1;
      double best_t = 1e300;
      for (int i = 0; i < 3; ++i) {
        if (gam[i] <= 1e-12) continue;
        double t = lam[i] / gam[i];
        if (t < best_t) {
          best_t = t;
          leave = i;
        }
      }
      if (leave < 0) return std::nullopt;
      basis_[leave] = violator;
    }
    return std::nullopt;
  }
};

}  // namespace detail

/// Discretization tolerance for the envelope identities: one primal-spacing
/// unit of slope scale plus the dual-grid quantization paid by biconjugation.
/// Reported alongside every envelope so downstream checks are self-describing.
inline double envelope_tolerance(const SampledFunction& h, const DualGrid& dual) {
  const Grid& g = h.grid();
  double diam = g.domain().diameter();
  double max_norm = 0.0;
  for (const auto& v : g.domain().extreme_points()) max_norm = std::max(max_norm, norm2(v));
  double primal_term = (h.finite_range() / diam + max_norm) * g.max_spacing();
  double dual_term = 0.5 * diam * dual.grid->max_spacing();
  return primal_term + dual_term;
}

inline double envelope_tolerance(const SampledFunction& h) {
  DualGrid dual = build_dual_grid(h);
  return envelope_tolerance(h, dual);
}

/// Gamma-regularization via double conjugation (primal -> dual -> primal).
/// Values at nodes outside the hull of the effective domain are +inf.
inline SampledFunction envelope_biconjugate(const SampledFunction& h) {
  DualGrid dual = build_dual_grid(h);
  SampledFunction hstar = conjugate_fast(h, dual);

  const Grid& g = h.grid();
  const Grid& dg = *dual.grid;
  const int d = g.dim();

  // backward sweep onto the primal lattice
  std::vector<double> w(dg.size());
  for (std::size_t j = 0; j < dg.size(); ++j) w[j] = -hstar.value(j).value();
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(d)),
      out_axes(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    axes[static_cast<std::size_t>(a)] = dg.axis_coords(a);
    out_axes[static_cast<std::size_t>(a)] = g.axis_coords(a);
  }
  std::vector<double> r = detail::llt_nd(std::move(w), std::move(axes), out_axes);

  std::vector<bool> inside = detail::effective_hull_mask(h);
  std::vector<ExtReal> out(g.size());
  int na[3] = {1, 1, 1};
  for (int a = 0; a < d; ++a) na[a] = g.axis_size(a);
  for (int i = 0; i < na[0]; ++i)
    for (int j = 0; j < na[1]; ++j)
      for (int k = 0; k < na[2]; ++k) {
        int id = g.lattice_node(i, j, k);
        if (id < 0) continue;
        std::size_t flat = (static_cast<std::size_t>(i) * na[1] + j) * na[2] + k;
        out[static_cast<std::size_t>(id)] =
            inside[static_cast<std::size_t>(id)] ? ExtReal(r[flat]) : ExtReal::infinity();
      }
  // off-lattice polytope vertices: direct second conjugation
  for (std::size_t id = g.lattice_count(); id < g.size(); ++id) {
    if (!inside[id]) {
      out[id] = ExtReal::infinity();
      continue;
    }
    const Point& x = g.node(id);
    double best = detail::kNegInf;
    for (std::size_t j = 0; j < dg.size(); ++j)
      best = std::max(best, detail::conj_term(x, dg.node(j), hstar.value(j).value()));
    out[id] = ExtReal(best);
  }
  return SampledFunction(h.grid_ptr(), std::move(out));
}

/// Gamma-regularization as the lower convex hull of the lifted finite nodes:
/// exact on grid data, the independent oracle for envelope_biconjugate.
/// 1D uses a monotone chain; 2D solves the supporting-minorant LP per node.
inline SampledFunction envelope_hull(const SampledFunction& h) {
  const Grid& g = h.grid();
  const int d = g.dim();
  if (d > 2) throw DimensionTooHigh("envelope_hull supports dim <= 2");

  // covers the box-bound-scale rounding of the supporting-minorant LP at
  // hull-boundary nodes; far below any genuine envelope gap
  const double snap = 1e-9 * (1.0 + h.finite_range());
  std::vector<ExtReal> out(g.size());

  if (d == 1) {
    std::vector<double> xs, vs;
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (h.value(i).finite()) {
        xs.push_back(g.node(i)[0]);
        vs.push_back(h.value(i).value());
        ids.push_back(i);
      }
    auto hull = detail::lower_hull_1d(xs, vs);
    std::vector<bool> on_hull(xs.size(), false);
    for (auto i : hull) on_hull[i] = true;
    double lo = xs.front(), hi = xs.back();
    for (std::size_t i = 0; i < g.size(); ++i) {
      double x = g.node(i)[0];
      if (x < lo || x > hi) {
        out[i] = ExtReal::infinity();
        continue;
      }
      // locate within the finite xs, then the bracketing hull segment
      auto it = std::lower_bound(xs.begin(), xs.end(), x);
      std::size_t pos = static_cast<std::size_t>(it - xs.begin());
      double v;
      if (pos < xs.size() && xs[pos] == x && on_hull[pos]) {
        v = vs[pos];
      } else {
        std::size_t k = 0;
        while (k + 1 < hull.size() && xs[hull[k + 1]] < x) ++k;
        std::size_t ia = hull[k], ib = hull[std::min(k + 1, hull.size() - 1)];
        if (ia == ib) {
          v = vs[ia];
        } else {
          double t = (x - xs[ia]) / (xs[ib] - xs[ia]);
          v = vs[ia] * (1.0 - t) + vs[ib] * t;
        }
      }
      if (h.value(i).finite()) {
        v = std::min(v, h.value(i).value());
        if (h.value(i).value() - v <= snap) v = h.value(i).value();
      }
      out[i] = ExtReal(v);
    }
    return SampledFunction(h.grid_ptr(), std::move(out));
  }

  std::vector<Point> pts;
  std::vector<double> vals;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (h.value(i).finite()) {
      pts.push_back(g.node(i));
      vals.push_back(h.value(i).value());
    }
  std::vector<bool> inside = detail::effective_hull_mask(h);
  // sequential warm-started walk: neighboring nodes usually share a facet
  detail::MinorantWalker walker(pts, vals);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!inside[i]) {
      out[i] = ExtReal::infinity();
      continue;
    }
    auto res = walker.solve(g.node(i), 0xE57E11ULL + i);
    double v = res.value;
    if (h.value(i).finite()) {
      v = std::min(v, h.value(i).value());
      if (h.value(i).value() - v <= snap) v = h.value(i).value();
    }
    out[i] = ExtReal(v);
  }
  return SampledFunction(h.grid_ptr(), std::move(out));
}

/// Supporting affine minorant at a node: m <= h on all nodes and
/// m(node) = envelope_hull(h)(node) up to rounding.
inline AffineFunction affine_minorant_at(const SampledFunction& h, std::size_t node) {
  const Grid& g = h.grid();
  const int d = g.dim();
  if (d > 2) throw DimensionTooHigh("affine_minorant_at supports dim <= 2");
  const Point& x = g.node(node);

  if (d == 1) {
    std::vector<double> xs, vs;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (h.value(i).finite()) {
        xs.push_back(g.node(i)[0]);
        vs.push_back(h.value(i).value());
      }
    auto hull = detail::lower_hull_1d(xs, vs);
    double q = x[0];
    if (q < xs.front() || q > xs.back())
      throw OutsideHull("node lies outside the effective domain hull");
    auto seg_slope = [&](std::size_t s) {
      std::size_t ia = hull[s], ib = hull[s + 1];
      return (vs[ib] - vs[ia]) / (xs[ib] - xs[ia]);
    };
    double slope = 0.0, anchor = vs[hull[0]];
    if (hull.size() > 1) {
      std::size_t k = 0;
      while (k + 1 < hull.size() && xs[hull[k + 1]] < q) ++k;
      std::size_t vhit = hull.size();
      if (xs[hull[k]] == q)
        vhit = k;
      else if (k + 1 < hull.size() && xs[hull[k + 1]] == q)
        vhit = k + 1;
      if (vhit < hull.size()) {
        // hull vertex: average the adjacent segment slopes (a supporting
        // slope; the mean is the central difference on smooth data)
        if (vhit == 0)
          slope = seg_slope(0);
        else if (vhit == hull.size() - 1)
          slope = seg_slope(hull.size() - 2);
        else
          slope = 0.5 * (seg_slope(vhit - 1) + seg_slope(vhit));
        anchor = vs[hull[vhit]];
      } else {
        std::size_t s = std::min(k, hull.size() - 2);
        slope = seg_slope(s);
        anchor = vs[hull[s]] + slope * (q - xs[hull[s]]);
      }
    }
    AffineFunction m(Point(slope), anchor - slope * q);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      worst = std::max(worst, m(Point(xs[i])) - vs[i]);
    if (worst > 0.0) m.intercept -= worst;
    return m;
  }

  std::vector<Point> pts;
  std::vector<double> vals;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (h.value(i).finite()) {
      pts.push_back(g.node(i));
      vals.push_back(h.value(i).value());
    }
  ConvexBody hull = convex_hull(pts, 2);
  if (!contains(hull, x, g.domain().epsilon_geom()))
    throw OutsideHull("node lies outside the effective domain hull");
  return detail::supporting_minorant(pts, vals, x, 0xA44E11ULL + node).m;
}

/// Discrete lower semi-continuous hull surrogate: the minimum of h over the
/// immediate lattice neighborhood (diagonals included, the node itself
/// included), i.e. the one-cell erosion standing in for inf h(B_delta(x)) at
/// the smallest nontrivial radius delta0 = 1.01 x max spacing.
inline SampledFunction lsc_hull(const SampledFunction& h) {
  const Grid& g = h.grid();
  const int d = g.dim();
  std::vector<ExtReal> out(g.size(), ExtReal::infinity());

  int na[3] = {1, 1, 1};
  for (int a = 0; a < d; ++a) na[a] = g.axis_size(a);
  auto relax = [&](std::size_t i, ExtReal v) {
    if (v < out[i]) out[i] = v;
  };
  for (int i = 0; i < na[0]; ++i)
    for (int j = 0; j < na[1]; ++j)
      for (int k = 0; k < na[2]; ++k) {
        int id = g.lattice_node(i, j, k);
        if (id < 0) continue;
        for (int di = -1; di <= 1; ++di)
          for (int dj = -1; dj <= 1; ++dj)
            for (int dk = -1; dk <= 1; ++dk) {
              int ii = i + di, jj = j + dj, kk = k + dk;
              if (ii < 0 || ii >= na[0] || jj < 0 || jj >= na[1] || kk < 0 || kk >= na[2])
                continue;
              if (d < 2 && dj != 0) continue;
              if (d < 3 && dk != 0) continue;
              int nb = g.lattice_node(ii, jj, kk);
              if (nb < 0) continue;
              relax(static_cast<std::size_t>(id), h.value(static_cast<std::size_t>(nb)));
            }
      }
  // off-lattice polytope vertex nodes: per-axis-scaled neighborhood both ways
  if (g.lattice_count() < g.size()) {
    for (std::size_t v = g.lattice_count(); v < g.size(); ++v) {
      const Point& pv = g.node(v);
      relax(v, h.value(v));
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (i == v) continue;
        bool close = true;
        for (int a = 0; a < d; ++a)
          if (std::abs(pv[a] - g.node(i)[a]) > 1.01 * g.spacing()[static_cast<std::size_t>(a)])
            close = false;
        if (!close) continue;
        relax(v, h.value(i));
        relax(i, h.value(v));
      }
    }
  }
  return SampledFunction(h.grid_ptr(), std::move(out));
}

/// h - x* nodewise; x* must be a linear functional (zero intercept).
inline SampledFunction tilt(const SampledFunction& h, const AffineFunction& xstar) {
  if (xstar.intercept != 0.0)
    throw NonlinearTilt("tilt requires a linear functional (zero intercept)");
  if (xstar.slope.dim != h.grid().dim())
    throw DimensionMismatch("tilt slope dimension mismatch");
  std::vector<ExtReal> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    ExtReal v = h.value(i);
    out[i] = v.finite() ? ExtReal(v.value() - xstar(h.grid().node(i))) : ExtReal::infinity();
  }
  return SampledFunction(h.grid_ptr(), std::move(out));
}

}  // namespace gammareg
