#pragma once

#include <string>
#include <vector>

#include "gammareg/domain.hpp"
#include "gammareg/expr.hpp"
#include "gammareg/grid.hpp"
#include "gammareg/sampled.hpp"

namespace gammareg {

/// One member of the bundled test-function corpus. Well locations and other
/// critical points sit on the lattice at every listed resolution.
struct CorpusEntry {
  std::string name;
  std::string expression;
  bool is_box = true;
  std::vector<double> lower, upper;
  std::vector<Point> vertices;   // polytope domains
  std::vector<int> resolution;   // default resolution
  bool grid_convex = false;      // expected check_convexity outcome
};

inline std::vector<CorpusEntry> bundled_corpus() {
  std::vector<CorpusEntry> c;
  auto box1 = [&](std::string name, std::string expr, double lo, double hi, int res,
                  bool convex) {
    CorpusEntry e;
    e.name = std::move(name);
    e.expression = std::move(expr);
    e.lower = {lo};
    e.upper = {hi};
    e.resolution = {res};
    e.grid_convex = convex;
    c.push_back(std::move(e));
  };
  auto box2 = [&](std::string name, std::string expr, double lo, double hi, int res,
                  bool convex) {
    CorpusEntry e;
    e.name = std::move(name);
    e.expression = std::move(expr);
    e.lower = {lo, lo};
    e.upper = {hi, hi};
    e.resolution = {res, res};
    e.grid_convex = convex;
    c.push_back(std::move(e));
  };

  box1("double_well", "(x^2-1)^2", -2.0, 2.0, 100, false);
  box1("spike", "if x==0 then 1 else x^2", -1.0, 1.0, 100, false);
  box1("three_well", "min(min((x+1)^2,x^2),(x-1)^2)", -2.0, 2.0, 100, false);
  box1("abs", "abs(x)", -1.0, 1.0, 100, true);
  box1("parabola", "x^2", -1.0, 1.0, 100, true);
  box1("affine", "2*x+1", 0.0, 1.0, 100, true);
  box1("constant", "3", -1.0, 1.0, 100, true);
  box1("exp_ramp", "exp(2*x)", -1.0, 1.0, 100, true);
  box1("restricted_dom", "if abs(x)<=0.5 then x^2 else inf", -1.0, 1.0, 100, true);
  box1("step", "if x<0.5 then 1 else 0", 0.0, 1.0, 100, false);

  box2("bowl2d", "x^2+y^2", -1.0, 1.0, 128, true);
  box2("saddle2d", "x^2-y^2", -1.0, 1.0, 128, false);
  box2("well2d", "(x^2+y^2-1)^2", -1.5, 1.5, 128, false);
  box2("plane2d", "1+x-y", -1.0, 1.0, 128, true);

  {
    CorpusEntry e;
    e.name = "tri_bowl";
    e.expression = "x^2+y^2";
    e.is_box = false;
    e.vertices = {Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)};
    e.resolution = {64, 64};
    e.grid_convex = true;
    c.push_back(std::move(e));
  }
  return c;
}

inline Domain corpus_domain(const CorpusEntry& e) {
  if (e.is_box) return Domain::box(e.lower, e.upper);
  return Domain::polytope2d(e.vertices);
}

inline SampledFunction build_corpus_function(const CorpusEntry& e,
                                             std::vector<int> resolution = {}) {
  if (resolution.empty()) resolution = e.resolution;
  GridPtr grid = build_grid(corpus_domain(e), resolution);
  ExprPtr expr = parse(e.expression);
  return sample(grid, [&](const Point& p) { return eval(expr, p); });
}

}  // namespace gammareg
