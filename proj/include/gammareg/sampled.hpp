#pragma once

#include <functional>
#include <vector>

#include "gammareg/errors.hpp"
#include "gammareg/ext_real.hpp"
#include "gammareg/grid.hpp"

namespace gammareg {

/// A function sampled on a Grid: one ExtReal per node, at least one finite.
/// lower_bound is the minimum over finite values, so h maps into
/// [lower_bound, +inf].
class SampledFunction {
public:
  SampledFunction(GridPtr grid, std::vector<ExtReal> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_->size())
      throw DimensionMismatch("value count does not match grid size");
    bool any_finite = false;
    double lb = 0.0;
    for (const auto& v : values_) {
      if (!v.finite()) continue;
      if (!any_finite || v.value() < lb) lb = v.value();
      any_finite = true;
    }
    if (!any_finite) throw AllInfinite("function is identically +inf");
    lower_bound_ = lb;
  }

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  ExtReal value(std::size_t i) const { return values_[i]; }
  const std::vector<ExtReal>& values() const { return values_; }
  double lower_bound() const { return lower_bound_; }

  /// Largest finite value minus smallest finite value.
  double finite_range() const {
    double lo = lower_bound_, hi = lower_bound_;
    for (const auto& v : values_)
      if (v.finite()) hi = std::max(hi, v.value());
    return hi - lo;
  }

private:
  GridPtr grid_;
  std::vector<ExtReal> values_;
  double lower_bound_;
};

/// Evaluate f at every node. Throws AllInfinite when no node value is finite.
inline SampledFunction sample(const GridPtr& grid,
                              const std::function<ExtReal(const Point&)>& f) {
  std::vector<ExtReal> values;
  values.reserve(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) values.push_back(f(grid->node(i)));
  return SampledFunction(grid, std::move(values));
}

/// Minimum over all node values; finite by the SampledFunction invariant.
/// Reduction runs in fixed node order.
inline ExtReal infimum(const SampledFunction& h) {
  ExtReal best = ExtReal::infinity();
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h.value(i) < best) best = h.value(i);
  return best;
}

/// Index of the first node attaining the minimum.
inline std::size_t argmin_node(const SampledFunction& h) {
  std::size_t arg = 0;
  ExtReal best = ExtReal::infinity();
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h.value(i) < best) {
      best = h.value(i);
      arg = i;
    }
  return arg;
}

namespace detail {

/// Walk every axis-aligned lattice line and report consecutive-finite-pair
/// difference quotients to cb(axis, slope). Pairs across +inf gaps use the
/// actual coordinate distance. Polytope vertex nodes (off-lattice) are skipped.
template <typename Callback>
void for_each_axis_slope(const SampledFunction& h, Callback cb) {
  const Grid& g = h.grid();
  const int d = g.dim();
  for (int axis = 0; axis < d; ++axis) {
    int n_line[3] = {1, 1, 1};
    for (int a = 0; a < d; ++a)
      if (a != axis) n_line[a] = g.axis_size(a);
    int idx[3] = {0, 0, 0};
    bool more = true;
    while (more) {
      // march along `axis` with the other indices fixed
      int prev_node = -1;
      double prev_x = 0.0;
      for (int i = 0; i < g.axis_size(axis); ++i) {
        int mi[3] = {idx[0], idx[1], idx[2]};
        mi[axis] = i;
        int id = g.lattice_node(mi[0], mi[1], mi[2]);
        if (id < 0) {
          continue;
        }
        if (!h.value(static_cast<std::size_t>(id)).finite()) continue;
        double x = g.coord(axis, i);
        if (prev_node >= 0) {
          double dv = h.value(static_cast<std::size_t>(id)).value() -
                      h.value(static_cast<std::size_t>(prev_node)).value();
          cb(axis, dv / (x - prev_x));
        }
        prev_node = id;
        prev_x = x;
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
}

}  // namespace detail

/// Max absolute finite-difference slope over all axis lines; 0 when no two
/// finite nodes share a line.
inline double lipschitz_estimate(const SampledFunction& h) {
  double best = 0.0;
  detail::for_each_axis_slope(h, [&](int, double s) { best = std::max(best, std::abs(s)); });
  return best;
}

/// Signed [min, max] finite-difference slope per axis.
inline void slope_bounds(const SampledFunction& h, std::vector<double>& lo,
                         std::vector<double>& hi) {
  const int d = h.grid().dim();
  lo.assign(static_cast<std::size_t>(d), 0.0);
  hi.assign(static_cast<std::size_t>(d), 0.0);
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  detail::for_each_axis_slope(h, [&](int axis, double s) {
    auto a = static_cast<std::size_t>(axis);
    if (!seen[a]) {
      lo[a] = hi[a] = s;
      seen[a] = true;
    } else {
      lo[a] = std::min(lo[a], s);
      hi[a] = std::max(hi[a], s);
    }
  });
}

}  // namespace gammareg
