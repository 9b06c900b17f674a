#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gammareg/geometry.hpp"
#include "gammareg/grid.hpp"
#include "gammareg/sampled.hpp"

using namespace gammareg;

namespace {

// LP-free extreme-point oracle: p is extreme iff it lies in no triangle (or
// segment) spanned by other points.
bool oracle_extreme_2d(const std::vector<Point>& pts, std::size_t idx) {
  const Point& p = pts[idx];
  std::size_t n = pts.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (a == idx) continue;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (b == idx) continue;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (c == idx) continue;
        const Point &A = pts[a], &B = pts[b], &C = pts[c];
        double det = (B[0] - A[0]) * (C[1] - A[1]) - (C[0] - A[0]) * (B[1] - A[1]);
        if (std::abs(det) < 1e-12) continue;
        double wb = ((p[0] - A[0]) * (C[1] - A[1]) - (C[0] - A[0]) * (p[1] - A[1])) / det;
        double wc = ((B[0] - A[0]) * (p[1] - A[1]) - (p[0] - A[0]) * (B[1] - A[1])) / det;
        double wa = 1.0 - wb - wc;
        if (wa >= -1e-12 && wb >= -1e-12 && wc >= -1e-12) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("1D hull is the interval of the data") {
  ConvexBody b = convex_hull({Point(0.2), Point(0.9), Point(0.5)}, 1);
  REQUIRE(b.size() == 2);
  CHECK(b.vertices[0][0] == 0.2);
  CHECK(b.vertices[1][0] == 0.9);
}

TEST_CASE("2D hull removes interior points") {
  ConvexBody b =
      convex_hull({Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0), Point(0.25, 0.25)}, 2);
  CHECK(b.size() == 3);
}

TEST_CASE("2D hull of random points keeps the square corners") {
  std::mt19937_64 rng(90210);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts = {Point(0.0, 0.0), Point(1.0, 0.0), Point(1.0, 1.0), Point(0.0, 1.0)};
  for (int i = 0; i < 50; ++i) pts.push_back(Point(u(rng), u(rng)));

  ConvexBody hull = convex_hull(pts, 2);
  for (int c = 0; c < 4; ++c) {
    bool found = false;
    for (const auto& v : hull.vertices)
      if (dist2(v, pts[static_cast<std::size_t>(c)]) < 1e-12) found = true;
    CHECK(found);
  }
  // cross-check the full vertex set against the brute-force oracle
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool in_hull_list = false;
    for (const auto& v : hull.vertices)
      if (dist2(v, pts[i]) < 1e-12) in_hull_list = true;
    CHECK(in_hull_list == oracle_extreme_2d(pts, i));
  }
}

TEST_CASE("extreme points of simple bodies") {
  ConvexBody seg = convex_hull({Point(-1.0), Point(1.0), Point(0.3)}, 1);
  PointSet e = extreme_points(seg);
  REQUIRE(e.size() == 2);
  CHECK(e[0][0] == -1.0);
  CHECK(e[1][0] == 1.0);

  ConvexBody single = convex_hull({Point(0.7)}, 1);
  CHECK(extreme_points(single).size() == 1);

  ConvexBody tri = convex_hull({Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)}, 2);
  CHECK(extreme_points(tri).size() == 3);
}

TEST_CASE("containment with tolerance") {
  ConvexBody seg = convex_hull({Point(-1.0), Point(1.0)}, 1);
  CHECK(contains(seg, Point(0.0), 0.0));
  CHECK(contains(seg, Point(1.05), 0.1));
  CHECK_FALSE(contains(seg, Point(1.05), 0.01));

  ConvexBody tri = convex_hull({Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)}, 2);
  CHECK_FALSE(contains(tri, Point(0.6, 0.6), 0.05));
  CHECK(distance_to_body(tri, Point(0.6, 0.6)) == Catch::Approx(0.2 / std::sqrt(2.0)));
  CHECK(contains(tri, Point(0.6, 0.6), 0.15));
  CHECK(contains(tri, Point(0.25, 0.25), 0.0));
}

TEST_CASE("hausdorff distances") {
  ConvexBody a = convex_hull({Point(-1.0), Point(1.0)}, 1);
  ConvexBody b = convex_hull({Point(-1.0), Point(0.9)}, 1);
  CHECK(hausdorff(a, a) == 0.0);
  CHECK(hausdorff(a, b) == Catch::Approx(0.1));

  ConvexBody square =
      convex_hull({Point(0.0, 0.0), Point(1.0, 0.0), Point(1.0, 1.0), Point(0.0, 1.0)}, 2);
  ConvexBody tri = convex_hull({Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)}, 2);
  double d = hausdorff(square, tri, 1000);
  CHECK(d == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(0.02));
  CHECK(d == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-12));

  ConvexBody seg2 = convex_hull({Point(0.0, 0.0), Point(1.0, 0.0)}, 2);
  CHECK_THROWS_AS(hausdorff(a, seg2), DimensionMismatch);

  // degenerate bodies: points and segments
  ConvexBody pt = convex_hull({Point(0.5, 0.5)}, 2);
  CHECK(hausdorff(pt, pt) == 0.0);
  // one side: 0.5 down to the segment; other side: sqrt(0.5) out to an end
  CHECK(hausdorff(pt, seg2) == Catch::Approx(std::sqrt(0.5)));
  CHECK(distance_to_body(seg2, Point(0.5, 0.3)) == Catch::Approx(0.3));
  CHECK(distance_to_body(seg2, Point(2.0, 0.0)) == Catch::Approx(1.0));
}

TEST_CASE("3D hull of a cube with interior noise") {
  std::vector<Point> pts;
  for (int m = 0; m < 8; ++m)
    pts.push_back(Point(m & 1 ? 1.0 : 0.0, m & 2 ? 1.0 : 0.0, m & 4 ? 1.0 : 0.0));
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  for (int i = 0; i < 30; ++i) pts.push_back(Point(u(rng), u(rng), u(rng)));
  ConvexBody hull = convex_hull(pts, 3);
  CHECK(hull.size() == 8);

  CHECK(distance_to_body(hull, Point(0.5, 0.5, 0.5)) == Catch::Approx(0.0).margin(1e-10));
  CHECK(distance_to_body(hull, Point(2.0, 0.5, 0.5)) == Catch::Approx(1.0).margin(1e-9));
  CHECK(contains(hull, Point(1.0, 1.0, 1.0), 1e-12));
}

TEST_CASE("3D distance agrees with the exact 2D polygon distance") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 40; ++t) {
    std::vector<Point> flat, lifted;
    for (int i = 0; i < 12; ++i) {
      double x = u(rng), y = u(rng);
      flat.push_back(Point(x, y));
      lifted.push_back(Point(x, y, 0.0));
    }
    ConvexBody poly = convex_hull(flat, 2);
    Point q(u(rng) * 2.0, u(rng) * 2.0);
    double exact = distance_to_body(poly, q);
    double mnp = detail::MinNormPoint::distance(Point(q[0], q[1], 0.0), lifted);
    CHECK(mnp == Catch::Approx(exact).margin(1e-8));
  }
}

TEST_CASE("hull idempotence and monotonicity") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 25; ++t) {
    std::vector<Point> s;
    for (int i = 0; i < 20; ++i) s.push_back(Point(u(rng), u(rng)));
    ConvexBody h1 = convex_hull(s, 2);
    ConvexBody h2 = convex_hull(extreme_points(h1), 2);
    REQUIRE(h1.size() == h2.size());
    for (std::size_t i = 0; i < h1.size(); ++i)
      CHECK(dist2(h1.vertices[i], h2.vertices[i]) < 1e-12);

    std::vector<Point> t_set = s;
    for (int i = 0; i < 10; ++i) t_set.push_back(Point(u(rng), u(rng)));
    ConvexBody ht = convex_hull(t_set, 2);
    for (const auto& v : h1.vertices) CHECK(contains(ht, v, 1e-9 * 4.0));
  }
}

TEST_CASE("caratheodory on the lifted double well") {
  auto g = build_grid(Domain::box({-2.0}, {2.0}), {8});
  std::vector<std::pair<Point, ExtReal>> support;
  for (std::size_t i = 0; i < g->size(); ++i) {
    double x = g->node(i)[0];
    double t = x * x - 1.0;
    support.emplace_back(g->node(i), ExtReal(t * t));
  }
  DiscreteMeasure mu = caratheodory(support, Point(0.0));
  REQUIRE(mu.size() == 2);
  CHECK(mu.support()[0].point[0] == Catch::Approx(-1.0));
  CHECK(mu.support()[1].point[0] == Catch::Approx(1.0));
  CHECK(mu.support()[0].weight == Catch::Approx(0.5));
  CHECK(mu.support()[1].weight == Catch::Approx(0.5));
  CHECK(mu.barycenter()[0] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("caratheodory at a support point of strictly convex data") {
  std::vector<std::pair<Point, ExtReal>> support;
  for (int i = 0; i <= 10; ++i) {
    double x = -1.0 + 0.2 * i;
    support.emplace_back(Point(x), ExtReal(x * x));
  }
  DiscreteMeasure mu = caratheodory(support, Point(0.2));
  REQUIRE(mu.size() == 1);
  CHECK(mu.support()[0].point[0] == Catch::Approx(0.2));
  CHECK(mu.support()[0].weight == 1.0);
}

TEST_CASE("caratheodory on affine data preserves the value") {
  std::vector<std::pair<Point, ExtReal>> support;
  for (int i = 0; i <= 4; ++i) {
    double x = 0.25 * i;
    support.emplace_back(Point(x), ExtReal(x));
  }
  DiscreteMeasure mu = caratheodory(support, Point(0.5));
  double bary = 0.0, integral = 0.0;
  for (const auto& a : mu.support()) {
    bary += a.weight * a.point[0];
    integral += a.weight * a.point[0];  // h(x) = x
  }
  CHECK(bary == Catch::Approx(0.5).margin(1e-12));
  CHECK(integral == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("caratheodory rejects outside queries and infinite values") {
  std::vector<std::pair<Point, ExtReal>> support = {{Point(0.0), ExtReal(0.0)},
                                                    {Point(1.0), ExtReal(1.0)}};
  CHECK_THROWS_AS(caratheodory(support, Point(2.0)), OutsideHull);
  support.emplace_back(Point(0.5), ExtReal::infinity());
  CHECK_THROWS_AS(caratheodory(support, Point(0.5)), Error);
}

TEST_CASE("caratheodory contract on random 2D data") {
  std::mt19937_64 rng(60601);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 25; ++t) {
    std::vector<std::pair<Point, ExtReal>> support;
    std::vector<Point> pts;
    // corners guarantee the query lies in the hull
    for (auto [x, y] : {std::pair{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}) {
      support.emplace_back(Point(x, y), ExtReal(u(rng)));
      pts.push_back(Point(x, y));
    }
    for (int i = 0; i < 24; ++i) {
      Point p(u(rng), u(rng));
      support.emplace_back(p, ExtReal(u(rng)));
      pts.push_back(p);
    }
    Point q(0.5 * u(rng), 0.5 * u(rng));
    DiscreteMeasure mu = caratheodory(support, q);
    CHECK(mu.size() <= 3);
    double wsum = 0.0;
    for (const auto& a : mu.support()) {
      CHECK(a.weight >= 0.0);
      wsum += a.weight;
    }
    CHECK(std::abs(wsum - 1.0) <= 1e-12);
    CHECK(dist2(mu.barycenter(), q) <= 1e-9 * detail::bbox_diameter(pts));
  }
}

TEST_CASE("hull input validation") {
  CHECK_THROWS_AS(convex_hull(std::vector<Point>{}, 1), Error);
  CHECK_THROWS_AS(convex_hull({Point(0.0, 0.0)}, 1), DimensionMismatch);
  CHECK_THROWS_AS(contains(convex_hull({Point(0.0)}, 1), Point(0.0), -1.0), Error);
}
