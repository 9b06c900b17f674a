#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gammareg/point.hpp"

namespace gammareg::detail {

/// Wolfe's min-norm-point algorithm: distance from the origin to the convex
/// hull of a finite point set, via an active "corral" of affinely independent
/// points. Small dense solves only; adequate for desk-scale vertex sets.
class MinNormPoint {
public:
  /// Euclidean distance from x to conv(points).
  static double distance(const Point& x, const std::vector<Point>& points) {
    if (points.empty()) return std::numeric_limits<double>::infinity();
    std::vector<Point> q(points.size());
    double scale = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      q[i] = points[i] - x;
      scale = std::max(scale, dot(q[i], q[i]));
    }
    if (scale == 0.0) return 0.0;
    const double tol = 1e-13 * scale;

    std::vector<std::size_t> corral;
    std::vector<double> lambda;
    std::size_t best = 0;
    for (std::size_t i = 1; i < q.size(); ++i)
      if (dot(q[i], q[i]) < dot(q[best], q[best])) best = i;
    corral = {best};
    lambda = {1.0};

    Point y = q[best];
    const int max_outer = static_cast<int>(8 * q.size()) + 64;
    for (int outer = 0; outer < max_outer; ++outer) {
      // Most violating vertex w.r.t. the current point.
      std::size_t j = 0;
      double bestdot = dot(y, q[0]);
      for (std::size_t i = 1; i < q.size(); ++i) {
        double d = dot(y, q[i]);
        if (d < bestdot) {
          bestdot = d;
          j = i;
        }
      }
      if (bestdot >= dot(y, y) - tol) break;
      bool already = false;
      for (std::size_t i : corral)
        if (i == j) already = true;
      if (already) break;
      corral.push_back(j);
      lambda.push_back(0.0);

      // Minor cycle: pull the affine minimizer back into the simplex.
      for (int inner = 0; inner < 64; ++inner) {
        std::vector<double> alpha = affine_min_norm(q, corral);
        bool ok = true;
        for (double a : alpha)
          if (a < 1e-12) ok = false;
        if (ok) {
          lambda = alpha;
          break;
        }
        double theta = 1.0;
        for (std::size_t i = 0; i < corral.size(); ++i) {
          double diff = lambda[i] - alpha[i];
          if (diff > 1e-15) theta = std::min(theta, lambda[i] / diff);
        }
        for (std::size_t i = 0; i < corral.size(); ++i)
          lambda[i] += theta * (alpha[i] - lambda[i]);
        for (std::size_t i = corral.size(); i-- > 0;) {
          if (lambda[i] <= 1e-12) {
            corral.erase(corral.begin() + static_cast<std::ptrdiff_t>(i));
            lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(i));
          }
        }
      }
      y = combine(q, corral, lambda);
    }
    return norm2(y);
  }

private:
  static Point combine(const std::vector<Point>& q, const std::vector<std::size_t>& idx,
                       const std::vector<double>& w) {
    Point y;
    y.dim = q.front().dim;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (int k = 0; k < y.dim; ++k) y[k] += w[i] * q[idx[i]][k];
    return y;
  }

  /// Minimize |sum alpha_i q_i|^2 over sum alpha = 1 (signs free): solve the
  /// regularized KKT system G alpha = mu 1 and normalize.
  static std::vector<double> affine_min_norm(const std::vector<Point>& q,
                                             const std::vector<std::size_t>& idx) {
    std::size_t k = idx.size();
    std::vector<double> g(k * k), rhs(k, 1.0);
    double tr = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        g[i * k + j] = dot(q[idx[i]], q[idx[j]]);
        if (i == j) tr += g[i * k + j];
      }
    double ridge = 1e-14 * (tr + 1.0);
    for (std::size_t i = 0; i < k; ++i) g[i * k + i] += ridge;
    // Gaussian elimination with partial pivoting.
    std::vector<double> a = g, x = rhs;
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t p = col;
      for (std::size_t r = col + 1; r < k; ++r)
        if (std::abs(a[r * k + col]) > std::abs(a[p * k + col])) p = r;
      if (p != col) {
        for (std::size_t j = 0; j < k; ++j) std::swap(a[col * k + j], a[p * k + j]);
        std::swap(x[col], x[p]);
      }
      double d = a[col * k + col];
      if (d == 0.0) continue;
      for (std::size_t r = col + 1; r < k; ++r) {
        double f = a[r * k + col] / d;
        if (f == 0.0) continue;
        for (std::size_t j = col; j < k; ++j) a[r * k + j] -= f * a[col * k + j];
        x[r] -= f * x[col];
      }
    }
    std::vector<double> alpha(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
      double s = x[i];
      for (std::size_t j = i + 1; j < k; ++j) s -= a[i * k + j] * alpha[j];
      alpha[i] = a[i * k + i] != 0.0 ? s / a[i * k + i] : 0.0;
    }
    double sum = 0.0;
    for (double v : alpha) sum += v;
    if (sum == 0.0) {
      std::fill(alpha.begin(), alpha.end(), 1.0 / static_cast<double>(k));
    } else {
      for (double& v : alpha) v /= sum;
    }
    return alpha;
  }
};

}  // namespace gammareg::detail
