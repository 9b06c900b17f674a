#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gammareg/bauer.hpp"
#include "gammareg/csv.hpp"
#include "gammareg/minimize.hpp"
#include "gammareg/parallel.hpp"
#include "gammareg/problem_spec.hpp"
#include "gammareg/subdiff.hpp"
#include "gammareg/transform.hpp"
#include "gammareg/verify.hpp"
#include "gammareg/version.hpp"

namespace gammareg::cli {

using json = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::string spec_path;
  std::string out_dir = ".";
  std::string suite = "all";
  double tol = -1.0;
  int threads = 1;
  std::vector<int> dual_res;
};

namespace detail {

inline json value_json(ExtReal v) {
  if (v.finite()) return json(v.value());
  return json("inf");
}

inline json meta_json(const Options& opt, const ProblemSpec& spec, const Grid& g,
                      double denv, double min_tol) {
  json meta;
  meta["schema"] = 1;
  meta["tool"] = "gammareg";
  meta["version"] = kVersion;
  meta["command"] = opt.command;
  meta["spec_hash"] = fnv1a_hex(spec.raw);
  meta["dim"] = g.dim();
  meta["resolution"] = g.resolution();
  meta["spacing"] = g.spacing();
  json tols;
  tols["eps_geom"] = g.domain().epsilon_geom();
  tols["delta_env"] = denv;
  tols["minimizer_tol"] = min_tol;
  meta["tolerances"] = tols;
  return meta;
}

inline void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << j.dump(2) << "\n";
}

inline std::vector<std::string> point_row(const Point& p, int dim) {
  std::vector<std::string> row;
  for (int a = 0; a < dim; ++a) row.push_back(format_value(p[a]));
  return row;
}

inline json point_json(const Point& p) {
  json arr = json::array();
  for (int a = 0; a < p.dim; ++a) arr.push_back(p[a]);
  return arr;
}

inline std::vector<std::string> coord_header(int dim) {
  std::vector<std::string> h = {"x"};
  if (dim >= 2) h.push_back("y");
  if (dim >= 3) h.push_back("z");
  return h;
}

}  // namespace detail

/// Node index matching a spec-file query point (error when absent).
inline int find_node_or_throw(const Grid& g, const Point& p) {
  double eps = g.domain().epsilon_geom();
  for (std::size_t i = 0; i < g.size(); ++i)
    if (dist2(g.node(i), p) <= eps) return static_cast<int>(i);
  throw SpecError("key 'point' does not match a grid node");
}

/// Run one command against a problem spec; returns the process exit code
/// (0 ok, 1 input error, 2 failed verification contract).
inline int run(const Options& opt) {
  set_thread_count(opt.threads);
  ProblemSpec spec = load_spec(opt.spec_path);
  if (!opt.dual_res.empty()) spec.dual_resolution = opt.dual_res;
  if (opt.tol >= 0.0) spec.tol = opt.tol;

  GridPtr grid;
  SampledFunction h = build_problem(spec, &grid);
  const Grid& g = *grid;
  const int dim = g.dim();

  DualGrid dual = build_dual_grid(h, spec.dual_resolution);
  double denv = envelope_tolerance(h, dual);
  double min_tol = spec.tol.value_or(default_minimizer_tol(h));

  std::filesystem::create_directories(opt.out_dir);
  auto outfile = [&](const std::string& name) {
    return std::filesystem::path(opt.out_dir) / name;
  };
  json meta = detail::meta_json(opt, spec, g, denv, min_tol);

  if (opt.command == "conjugate") {
    SampledFunction hstar = conjugate_fast(h, dual);
    auto header = detail::coord_header(dim);  // dual coordinates reuse the axis names
    header.push_back("h_star");
    CsvWriter csv(header);
    for (std::size_t j = 0; j < hstar.size(); ++j) {
      auto row = detail::point_row(dual.grid->node(j), dim);
      row.push_back(format_value(hstar.value(j)));
      csv.row(row);
    }
    csv.write(outfile("conjugate.csv").string());
    meta["dual_resolution"] = dual.grid->resolution();
    meta["dual_spacing"] = dual.grid->spacing();
    detail::write_json(meta, outfile("conjugate.json"));
    return 0;
  }

  if (opt.command == "envelope") {
    SampledFunction env = dim <= 2 ? envelope_hull(h) : envelope_biconjugate(h);
    auto header = detail::coord_header(dim);
    header.push_back("h");
    header.push_back("gamma_h");
    CsvWriter csv(header);
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto row = detail::point_row(g.node(i), dim);
      row.push_back(format_value(h.value(i)));
      row.push_back(format_value(env.value(i)));
      csv.row(row);
    }
    csv.write(outfile("envelope.csv").string());
    detail::write_json(meta, outfile("envelope.json"));
    return 0;
  }

  if (opt.command == "lsc-hull") {
    SampledFunction h0 = lsc_hull(h);
    auto header = detail::coord_header(dim);
    header.push_back("h");
    header.push_back("h_0");
    CsvWriter csv(header);
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto row = detail::point_row(g.node(i), dim);
      row.push_back(format_value(h.value(i)));
      row.push_back(format_value(h0.value(i)));
      csv.row(row);
    }
    csv.write(outfile("lsc_hull.csv").string());
    detail::write_json(meta, outfile("lsc_hull.json"));
    return 0;
  }

  if (opt.command == "minimizers") {
    SampledFunction env = envelope_hull(h);
    SampledFunction lsc = lsc_hull(h);
    double inf_h = infimum(h).value();
    PointSet omega = generalized_minimizers_from(lsc, inf_h, min_tol);
    ConvexBody m = envelope_minimizers_from(env, min_tol);

    CsvWriter omega_csv(detail::coord_header(dim));
    for (const auto& p : omega) omega_csv.row(detail::point_row(p, dim));
    omega_csv.write(outfile("omega.csv").string());
    CsvWriter m_csv(detail::coord_header(dim));
    for (const auto& p : m.vertices) m_csv.row(detail::point_row(p, dim));
    m_csv.write(outfile("minimizer_body.csv").string());

    double worst = 0.0;
    std::size_t violations = 0;
    PointSet em = extreme_points(m);
    for (const auto& v : em) {
      double dmin = omega.min_dist(v);
      worst = std::max(worst, dmin);
      if (dmin > 2.0 * g.max_spacing()) ++violations;
    }
    bool strict = false;
    for (const auto& w : omega)
      if (em.min_dist(w) > 2.0 * g.max_spacing()) strict = true;

    meta["inf_h"] = inf_h;
    meta["inf_gap"] = std::abs(inf_h - infimum(env).value());
    meta["set_gap"] = hausdorff(m, convex_hull(omega, dim));
    meta["theorem3_max_distance"] = worst;
    meta["theorem3_violations"] = violations;
    meta["strict_inclusion"] = strict;
    detail::write_json(meta, outfile("minimizers.json"));
    return 0;
  }

  if (opt.command == "subdiff") {
    AffineFunction xstar = AffineFunction::linear(
        spec.tilt.value_or([&] {
          Point z;
          z.dim = dim;
          return z;
        }()));
    SampledFunction tilted = tilt(h, xstar);
    double sub_tol = spec.tol.value_or(default_minimizer_tol(tilted));
    ConvexBody sub = subdifferential(h, xstar, sub_tol);
    CsvWriter csv(detail::coord_header(dim));
    for (const auto& p : sub.vertices) csv.row(detail::point_row(p, dim));
    csv.write(outfile("subdiff_vertices.csv").string());

    meta["tilt"] = detail::point_json(xstar.slope);
    meta["subdifferential_vertices"] = json::array();
    for (const auto& p : sub.vertices) meta["subdifferential_vertices"].push_back(detail::point_json(p));
    if (!spec.radii.empty()) {
      CorollaryLRReport lr = check_corollary_LR(h, xstar, spec.radii);
      LimitingGradients lim = limiting_gradients(h, xstar, spec.radii);
      meta["radii"] = spec.radii;
      meta["t_intersection"] = json::array();
      for (const auto& p : lim.intersection) meta["t_intersection"].push_back(detail::point_json(p));
      meta["lr_included"] = lr.included;
      meta["lr_excess"] = lr.excess;
      meta["ystar_count_per_radius"] = lr.ystar_count_per_radius;
    }
    detail::write_json(meta, outfile("subdiff.json"));
    return 0;
  }

  if (opt.command == "exhaust") {
    if (spec.family.empty()) throw SpecError("exhaust requires key 'family'");
    std::vector<ConvexBody> family;
    for (const auto& verts : spec.family) family.push_back(convex_hull(verts, dim));
    ExhaustionReport rep = nested_exhaustion(h, family, min_tol);
    CsvWriter csv(detail::coord_header(dim));
    for (const auto& p : rep.recovered) csv.row(detail::point_row(p, dim));
    csv.write(outfile("exhaust.csv").string());
    meta["recovered"] = json::array();
    for (const auto& p : rep.recovered) meta["recovered"].push_back(detail::point_json(p));
    meta["gate_passed"] = rep.gate_passed;
    meta["restricted_inf"] = rep.restricted_inf;
    meta["inf_h"] = infimum(h).value();
    detail::write_json(meta, outfile("exhaust.json"));
    return 0;
  }

  if (opt.command == "bauer") {
    if (spec.expression_plus.empty())
      throw SpecError("bauer requires key 'expression_plus' (the usc convex summand)");
    ExprPtr ep = parse(spec.expression_plus);
    if (ep->max_var() >= dim)
      throw ArityError("expression_plus uses more variables than the domain dimension");
    SampledFunction hp = sample(grid, [&](const Point& p) { return eval(ep, p); });
    ConvexityReport cm = check_convexity(h), cp = check_convexity(hp);
    BauerReport rep = check_bauer(h, hp);
    meta["h_minus_grid_convex"] = cm.is_grid_convex;
    meta["h_plus_grid_convex"] = cp.is_grid_convex;
    meta["sup_all_nodes"] = rep.sup_all;
    meta["sup_extreme_nodes"] = rep.sup_extreme;
    meta["gap"] = rep.gap;
    meta["lipschitz"] = rep.lipschitz;
    meta["gap_bound"] = rep.lipschitz * g.max_spacing();
    detail::write_json(meta, outfile("bauer.json"));
    bool ok = rep.gap >= -1e-9 && rep.gap <= rep.lipschitz * g.max_spacing() + 1e-9;
    return ok ? 0 : 2;
  }

  if (opt.command == "measure") {
    if (!spec.point) throw SpecError("measure requires key 'point'");
    int node = find_node_or_throw(g, *spec.point);
    DiscreteMeasure mu = representing_measure(h, static_cast<std::size_t>(node));
    auto header = detail::coord_header(dim);
    header.push_back("weight");
    CsvWriter csv(header);
    for (const auto& atom : mu.support()) {
      auto row = detail::point_row(atom.point, dim);
      row.push_back(format_value(atom.weight));
      csv.row(row);
    }
    csv.write(outfile("measure.csv").string());
    meta["point"] = detail::point_json(g.node(static_cast<std::size_t>(node)));
    meta["barycenter"] = detail::point_json(mu.barycenter());
    meta["support_size"] = mu.size();
    detail::write_json(meta, outfile("measure.json"));
    return 0;
  }

  if (opt.command == "verify") {
    VerifyOptions vopt;
    vopt.suite = opt.suite;
    vopt.dual_resolution = spec.dual_resolution;
    vopt.tol = spec.tol.value_or(-1.0);
    std::vector<Check> checks = run_verify(h, vopt);
    bool all_pass = true;
    json arr = json::array();
    for (const auto& c : checks) {
      json jc;
      jc["name"] = c.name;
      if (c.skipped) {
        jc["skipped"] = true;
        jc["note"] = c.note;
      } else {
        jc["gap"] = c.measured;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        if (!c.note.empty()) jc["note"] = c.note;
        if (!c.pass) all_pass = false;
      }
      arr.push_back(jc);
    }
    meta["suite"] = opt.suite;
    meta["checks"] = arr;
    meta["pass"] = all_pass;
    detail::write_json(meta, outfile("verify.json"));
    return all_pass ? 0 : 2;
  }

  throw SpecError("unknown command '" + opt.command + "'");
}

}  // namespace gammareg::cli
