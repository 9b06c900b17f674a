#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gammareg/errors.hpp"

namespace gammareg::detail {

/// Seidel's randomized incremental algorithm for linear programs in d <= 3
/// variables: maximize c.z subject to a_i.z <= b_i and lo_k <= z_k <= hi_k.
/// Expected linear time in the constraint count. The shuffle is seeded by the
/// caller, so results are deterministic.
///
/// The variable box is part of the problem statement (callers pass generous
/// artificial bounds when the natural problem is unbounded in some direction).
class SeidelLP {
public:
  struct Row {
    std::array<double, 3> a;
    double b;
  };

  /// Returns the maximizer; throws Error on an infeasible system.
  static std::array<double, 3> solve(int dim, const std::vector<Row>& rows,
                                     const std::array<double, 3>& objective,
                                     const std::array<double, 3>& lo,
                                     const std::array<double, 3>& hi, std::uint64_t seed) {
    std::vector<std::uint32_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::uint64_t s = seed ? seed : 0x9E3779B97F4A7C15ULL;
    for (std::size_t i = order.size(); i > 1; --i) {
      s = splitmix(s);
      std::swap(order[i - 1], order[s % i]);
    }
    std::vector<Row> shuffled;
    shuffled.reserve(rows.size());
    for (auto idx : order) shuffled.push_back(rows[idx]);
    return recurse(dim, shuffled, objective, lo, hi);
  }

private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  static double feas_eps(const Row& r, const std::array<double, 3>& z, int dim) {
    double s = std::abs(r.b);
    for (int k = 0; k < dim; ++k) s += std::abs(r.a[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(k)]);
    return 1e-12 * (1.0 + s);
  }

  static std::array<double, 3> recurse(int dim, const std::vector<Row>& rows,
                                       std::array<double, 3> c, std::array<double, 3> lo,
                                       std::array<double, 3> hi) {
    if (dim == 1) return base1(rows, c, lo, hi);

    std::array<double, 3> z{};
    for (int k = 0; k < dim; ++k) {
      auto ks = static_cast<std::size_t>(k);
      z[ks] = c[ks] >= 0.0 ? hi[ks] : lo[ks];
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      double lhs = 0.0;
      for (int k = 0; k < dim; ++k) lhs += r.a[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(k)];
      if (lhs <= r.b + feas_eps(r, z, dim)) continue;

      // The optimum of the first i+1 constraints lies on this boundary:
      // substitute out the variable with the largest coefficient.
      int piv = 0;
      for (int k = 1; k < dim; ++k)
        if (std::abs(r.a[static_cast<std::size_t>(k)]) > std::abs(r.a[static_cast<std::size_t>(piv)])) piv = k;
      double ap = r.a[static_cast<std::size_t>(piv)];
      if (ap == 0.0) {
        if (r.b < 0.0) throw Error("linear program infeasible");
        continue;
      }

      std::vector<Row> sub;
      sub.reserve(i + 2);
      auto reduce = [&](const Row& q) {
        double alpha = q.a[static_cast<std::size_t>(piv)] / ap;
        Row out{};
        int w = 0;
        for (int k = 0; k < dim; ++k) {
          if (k == piv) continue;
          out.a[static_cast<std::size_t>(w++)] =
              q.a[static_cast<std::size_t>(k)] - alpha * r.a[static_cast<std::size_t>(k)];
        }
        out.b = q.b - alpha * r.b;
        return out;
      };
      for (std::size_t j = 0; j < i; ++j) sub.push_back(reduce(rows[j]));
      {
        Row up{};
        up.a[static_cast<std::size_t>(piv)] = 1.0;
        up.b = hi[static_cast<std::size_t>(piv)];
        sub.push_back(reduce(up));
        Row dn{};
        dn.a[static_cast<std::size_t>(piv)] = -1.0;
        dn.b = -lo[static_cast<std::size_t>(piv)];
        sub.push_back(reduce(dn));
      }

      std::array<double, 3> csub{}, losub{}, hisub{};
      {
        double alpha = c[static_cast<std::size_t>(piv)] / ap;
        int w = 0;
        for (int k = 0; k < dim; ++k) {
          if (k == piv) continue;
          csub[static_cast<std::size_t>(w)] =
              c[static_cast<std::size_t>(k)] - alpha * r.a[static_cast<std::size_t>(k)];
          losub[static_cast<std::size_t>(w)] = lo[static_cast<std::size_t>(k)];
          hisub[static_cast<std::size_t>(w)] = hi[static_cast<std::size_t>(k)];
          ++w;
        }
      }
      std::array<double, 3> zs = recurse(dim - 1, sub, csub, losub, hisub);

      int w = 0;
      double acc = r.b;
      for (int k = 0; k < dim; ++k) {
        if (k == piv) continue;
        z[static_cast<std::size_t>(k)] = zs[static_cast<std::size_t>(w++)];
        acc -= r.a[static_cast<std::size_t>(k)] * z[static_cast<std::size_t>(k)];
      }
      z[static_cast<std::size_t>(piv)] = acc / ap;
    }
    return z;
  }

  static std::array<double, 3> base1(const std::vector<Row>& rows, std::array<double, 3> c,
                                     std::array<double, 3> lo, std::array<double, 3> hi) {
    double l = lo[0], h = hi[0];
    for (const Row& r : rows) {
      double a = r.a[0];
      if (a > 0.0)
        h = std::min(h, r.b / a);
      else if (a < 0.0)
        l = std::max(l, r.b / a);
      else if (r.b < -1e-12 * (1.0 + std::abs(r.b)))
        throw Error("linear program infeasible");
    }
    if (l > h + 1e-9 * (1.0 + std::abs(l) + std::abs(h)))
      throw Error("linear program infeasible");
    if (l > h) h = l;
    return {c[0] >= 0.0 ? h : l, 0.0, 0.0};
  }
};

}  // namespace gammareg::detail
