#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "gammareg/domain.hpp"
#include "gammareg/ext_real.hpp"
#include "gammareg/grid.hpp"
#include "gammareg/sampled.hpp"

using namespace gammareg;

TEST_CASE("ExtReal arithmetic and order") {
  ExtReal a(1.5), b(2.0), inf = ExtReal::infinity();
  CHECK((a + b).value() == 3.5);
  CHECK((a + inf).is_inf());
  CHECK((inf + inf).is_inf());
  CHECK(a < b);
  CHECK(b < inf);
  CHECK(inf <= inf);
  CHECK(max(a, inf).is_inf());
  CHECK(min(a, inf) == a);
  CHECK_THROWS_AS(ExtReal(-std::numeric_limits<double>::infinity()), EvalError);
  CHECK_THROWS_AS(ExtReal(std::nan("")), EvalError);
  CHECK_THROWS_AS(inf - inf, EvalError);
  CHECK_THROWS_AS(a - inf, EvalError);
}

TEST_CASE("Domain validation") {
  CHECK_THROWS_AS(Domain::box({0.0}, {0.0}), InvalidDomain);
  CHECK_THROWS_AS(Domain::box({0.0, 1.0}, {1.0}), InvalidDomain);
  CHECK_THROWS_AS(Domain::box({}, {}), InvalidDomain);
  // clockwise triangle is rejected
  CHECK_THROWS_AS(Domain::polytope2d({Point(0.0, 0.0), Point(0.0, 1.0), Point(1.0, 0.0)}),
                  InvalidDomain);
  CHECK_THROWS_AS(Domain::polytope2d({Point(0.0, 0.0), Point(1.0, 0.0)}), InvalidDomain);
  // collinear "triangle"
  CHECK_THROWS_AS(Domain::polytope2d({Point(0.0, 0.0), Point(1.0, 0.0), Point(2.0, 0.0)}),
                  InvalidDomain);

  Domain tri = Domain::polytope2d({Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)});
  CHECK(tri.dim() == 2);
  CHECK(tri.contains(Point(0.25, 0.25), 0.0));
  CHECK_FALSE(tri.contains(Point(0.6, 0.6), 1e-6));

  Domain box = Domain::box({-2.0}, {2.0});
  CHECK(box.diameter() == 4.0);
  CHECK(box.epsilon_geom() == Catch::Approx(4e-9));
}

TEST_CASE("build_grid on a unit interval") {
  auto g = build_grid(Domain::box({0.0}, {1.0}), {4});
  REQUIRE(g->size() == 5);
  CHECK(g->node(0)[0] == 0.0);
  CHECK(g->node(1)[0] == 0.25);
  CHECK(g->node(2)[0] == 0.5);
  CHECK(g->node(3)[0] == 0.75);
  CHECK(g->node(4)[0] == 1.0);
  CHECK(g->spacing()[0] == 0.25);
}

TEST_CASE("build_grid endpoints are extreme points") {
  auto g = build_grid(Domain::box({-2.0}, {2.0}), {8});
  REQUIRE(g->size() == 9);
  CHECK(g->node(0)[0] == -2.0);
  CHECK(g->node(8)[0] == 2.0);
  for (const auto& e : g->domain().extreme_points()) {
    bool found = false;
    for (std::size_t i = 0; i < g->size(); ++i)
      if (dist2(g->node(i), e) <= g->domain().epsilon_geom()) found = true;
    CHECK(found);
  }
}

TEST_CASE("build_grid rejects tiny resolutions") {
  CHECK_THROWS_AS(build_grid(Domain::box({0.0}, {1.0}), {1}), ResolutionTooSmall);
  CHECK_THROWS_AS(build_grid(Domain::box({0.0, 0.0}, {1.0, 1.0}), {4}), ResolutionTooSmall);
}

TEST_CASE("triangle grid equals the lattice-filter oracle") {
  Domain tri = Domain::polytope2d({Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)});
  auto g = build_grid(tri, {2, 2});

  // oracle: enumerate the bounding-box lattice and filter by the half-planes
  // x >= 0, y >= 0, x + y <= 1; the triangle vertices are already lattice
  // points here.
  std::vector<Point> expected;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) {
      double x = i * 0.5, y = j * 0.5;
      if (x + y <= 1.0 + 1e-12) expected.push_back(Point(x, y));
    }
  REQUIRE(g->size() == expected.size());
  for (const auto& e : expected) {
    bool found = false;
    for (std::size_t i = 0; i < g->size(); ++i)
      if (dist2(g->node(i), e) == 0.0) found = true;
    CHECK(found);
  }
  // all three vertices are nodes
  for (const auto& v : tri.extreme_points()) {
    bool found = false;
    for (std::size_t i = 0; i < g->size(); ++i)
      if (dist2(g->node(i), v) <= tri.epsilon_geom()) found = true;
    CHECK(found);
  }
}

TEST_CASE("grid construction is deterministic") {
  auto a = build_grid(Domain::box({-1.0, 0.0}, {2.0, 3.0}), {7, 5});
  auto b = build_grid(Domain::box({-1.0, 0.0}, {2.0, 3.0}), {7, 5});
  REQUIRE(a->size() == b->size());
  for (std::size_t i = 0; i < a->size(); ++i) {
    CHECK(a->node(i)[0] == b->node(i)[0]);
    CHECK(a->node(i)[1] == b->node(i)[1]);
  }
}

TEST_CASE("symmetric grids hit zero exactly") {
  auto g = build_grid(Domain::box({-1.0}, {1.0}), {100});
  CHECK(g->node(50)[0] == 0.0);
  auto g2 = build_grid(Domain::box({-2.0}, {2.0}), {400});
  CHECK(g2->node(300)[0] == 1.0);  // well location on the lattice
  CHECK(g2->node(100)[0] == -1.0);
}

TEST_CASE("sample evaluates nodewise") {
  auto g = build_grid(Domain::box({0.0}, {1.0}), {4});
  auto h = sample(g, [](const Point& p) { return ExtReal(p[0] * p[0]); });
  CHECK(h.value(0).value() == 0.0);
  CHECK(h.value(1).value() == 0.0625);
  CHECK(h.value(2).value() == 0.25);
  CHECK(h.value(3).value() == 0.5625);
  CHECK(h.value(4).value() == 1.0);
  CHECK(h.lower_bound() == 0.0);
}

TEST_CASE("sample rejects identically infinite functions") {
  auto g = build_grid(Domain::box({0.0}, {1.0}), {4});
  CHECK_THROWS_AS(sample(g, [](const Point&) { return ExtReal::infinity(); }), AllInfinite);
}

TEST_CASE("sample with a strict threshold convention") {
  auto g = build_grid(Domain::box({0.0}, {1.0}), {4});
  auto h = sample(g, [](const Point& p) {
    return p[0] < 0.5 ? ExtReal::infinity() : ExtReal(0.0);
  });
  CHECK(h.value(0).is_inf());
  CHECK(h.value(1).is_inf());
  CHECK(h.value(2).value() == 0.0);  // the 0.5 node itself is finite
  CHECK(h.value(3).value() == 0.0);
  CHECK(h.value(4).value() == 0.0);
}

TEST_CASE("infimum agrees with brute force on the double well") {
  auto g = build_grid(Domain::box({-2.0}, {2.0}), {400});
  auto h = sample(g, [](const Point& p) {
    double t = p[0] * p[0] - 1.0;
    return ExtReal(t * t);
  });
  double brute = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < h.size(); ++i) brute = std::min(brute, h.value(i).value());
  CHECK(infimum(h).value() == brute);
  CHECK(infimum(h).value() == 0.0);  // the wells sit on the lattice
  CHECK(infimum(h).value() >= h.lower_bound());
}

TEST_CASE("infimum of simple value lists") {
  auto g = build_grid(Domain::box({0.0}, {1.0}), {3});
  SampledFunction c3(g, {ExtReal(3.0), ExtReal(3.0), ExtReal(3.0), ExtReal(3.0)});
  CHECK(infimum(c3).value() == 3.0);
  SampledFunction mix(g, {ExtReal::infinity(), ExtReal::infinity(), ExtReal(0.0), ExtReal(1.0)});
  CHECK(infimum(mix).value() == 0.0);
  CHECK(mix.lower_bound() == 0.0);
}

TEST_CASE("slope bounds and lipschitz estimate") {
  auto g = build_grid(Domain::box({0.0}, {1.0}), {4});
  auto h = sample(g, [](const Point& p) { return ExtReal(2.0 * p[0]); });
  CHECK(lipschitz_estimate(h) == Catch::Approx(2.0));
  std::vector<double> lo, hi;
  slope_bounds(h, lo, hi);
  CHECK(lo[0] == Catch::Approx(2.0));
  CHECK(hi[0] == Catch::Approx(2.0));

  // slopes across an infinite gap use the actual coordinate distance
  SampledFunction gap(g, {ExtReal(0.0), ExtReal::infinity(), ExtReal(1.0), ExtReal::infinity(),
                          ExtReal(1.0)});
  CHECK(lipschitz_estimate(gap) == Catch::Approx(2.0));  // (1-0)/(0.5-0)
}
