#pragma once

#include <algorithm>
#include <memory>
#include <vector>

#include "gammareg/domain.hpp"
#include "gammareg/errors.hpp"
#include "gammareg/point.hpp"

namespace gammareg {

/// A finite node set discretizing a Domain.
///
/// Box domains carry the full lattice in row-major order (last axis fastest),
/// nodes being convex combinations lo*(1-t) + up*t with t = i/res so that
/// endpoints and symmetric midpoints are hit exactly. Polytope domains carry
/// the bounding-box lattice points that lie inside the polygon, in the same
/// row-major order, followed by any polygon vertices that are not already
/// lattice nodes.
class Grid {
public:
  Grid(Domain domain, std::vector<int> resolution)
      : domain_(std::move(domain)), res_(std::move(resolution)) {
    const int d = domain_.dim();
    if (static_cast<int>(res_.size()) != d)
      throw ResolutionTooSmall("resolution needs one entry per axis");
    for (int r : res_)
      if (r < 2) throw ResolutionTooSmall("resolution must be >= 2 per axis");

    double lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    if (domain_.is_box()) {
      for (int a = 0; a < d; ++a) {
        lo[a] = domain_.as_box().lower[a];
        hi[a] = domain_.as_box().upper[a];
      }
    } else {
      const auto& vs = domain_.as_polytope().vertices;
      for (int a = 0; a < 2; ++a) {
        lo[a] = hi[a] = vs[0][a];
        for (const auto& v : vs) {
          lo[a] = std::min(lo[a], v[a]);
          hi[a] = std::max(hi[a], v[a]);
        }
      }
    }
    coords_.resize(static_cast<std::size_t>(d));
    spacing_.resize(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
      int n = res_[static_cast<std::size_t>(a)];
      spacing_[static_cast<std::size_t>(a)] = (hi[a] - lo[a]) / n;
      auto& cs = coords_[static_cast<std::size_t>(a)];
      cs.resize(static_cast<std::size_t>(n) + 1);
      for (int i = 0; i <= n; ++i) {
        double t = static_cast<double>(i) / n;
        cs[static_cast<std::size_t>(i)] = lo[a] * (1.0 - t) + hi[a] * t;
      }
    }

    if (domain_.is_box()) {
      std::size_t total = 1;
      for (int a = 0; a < d; ++a) total *= coords_[static_cast<std::size_t>(a)].size();
      nodes_.reserve(total);
      int idx[3] = {0, 0, 0};
      for (std::size_t flat = 0; flat < total; ++flat) {
        Point p;
        p.dim = d;
        for (int a = 0; a < d; ++a) p[a] = coords_[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx[a])];
        nodes_.push_back(p);
        for (int a = d - 1; a >= 0; --a) {
          if (++idx[a] < static_cast<int>(coords_[static_cast<std::size_t>(a)].size())) break;
          idx[a] = 0;
        }
      }
    } else {
      const double eps = domain_.epsilon_geom();
      int nx = static_cast<int>(coords_[0].size());
      int ny = static_cast<int>(coords_[1].size());
      lattice_id_.assign(static_cast<std::size_t>(nx) * ny, -1);
      for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
          Point p(coords_[0][static_cast<std::size_t>(i)], coords_[1][static_cast<std::size_t>(j)]);
          if (domain_.contains(p, eps)) {
            lattice_id_[static_cast<std::size_t>(i) * ny + j] = static_cast<int>(nodes_.size());
            nodes_.push_back(p);
          }
        }
      for (const auto& v : domain_.as_polytope().vertices) {
        bool present = false;
        for (const auto& p : nodes_)
          if (dist2(p, v) <= eps) {
            present = true;
            break;
          }
        if (!present) nodes_.push_back(v);
      }
    }
  }

  const Domain& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  std::size_t size() const { return nodes_.size(); }
  const Point& node(std::size_t i) const { return nodes_[i]; }
  const std::vector<Point>& nodes() const { return nodes_; }

  const std::vector<int>& resolution() const { return res_; }
  const std::vector<double>& spacing() const { return spacing_; }
  double max_spacing() const { return *std::max_element(spacing_.begin(), spacing_.end()); }

  /// Nodes per axis (box lattice); polytope grids use the bounding-box lattice.
  int axis_size(int a) const { return static_cast<int>(coords_[static_cast<std::size_t>(a)].size()); }
  double coord(int a, int i) const { return coords_[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]; }
  const std::vector<double>& axis_coords(int a) const { return coords_[static_cast<std::size_t>(a)]; }

  bool is_full_lattice() const { return domain_.is_box(); }

  /// Node id of lattice position (box grids: the row-major index; polytope
  /// grids: -1 when the lattice point is outside the polygon).
  int lattice_node(int i, int j = 0, int k = 0) const {
    if (domain_.is_box()) {
      int d = dim();
      long id = i;
      if (d >= 2) id = id * axis_size(1) + j;
      if (d >= 3) id = id * axis_size(2) + k;
      return static_cast<int>(id);
    }
    return lattice_id_[static_cast<std::size_t>(i) * axis_size(1) + j];
  }

  /// Number of nodes that sit on the bounding-box lattice (the rest are
  /// polytope vertices appended at the tail).
  std::size_t lattice_count() const {
    if (domain_.is_box()) return nodes_.size();
    std::size_t c = 0;
    for (int id : lattice_id_)
      if (id >= 0) ++c;
    return c;
  }

private:
  Domain domain_;
  std::vector<int> res_;
  std::vector<std::vector<double>> coords_;
  std::vector<double> spacing_;
  std::vector<Point> nodes_;
  std::vector<int> lattice_id_;  // polytope grids only
};

using GridPtr = std::shared_ptr<const Grid>;

/// Discretize a domain. resolution = cells per axis, so axes carry
/// resolution+1 nodes; domain extreme points are always nodes.
inline GridPtr build_grid(const Domain& domain, const std::vector<int>& resolution) {
  return std::make_shared<Grid>(domain, resolution);
}

}  // namespace gammareg
