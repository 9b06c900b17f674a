// Acceptance suite: runs every shipped criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit code = number of failures.
//
// Usage: acceptance [path-to-cli-binary [path-to-specs-dir]]

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gammareg/bauer.hpp"
#include "gammareg/corpus.hpp"
#include "gammareg/minimize.hpp"
#include "gammareg/subdiff.hpp"
#include "gammareg/transform.hpp"
#include "gammareg/ulp.hpp"

using namespace gammareg;

namespace {

struct Bundle {
  CorpusEntry entry;
  std::vector<int> resolution;
  SampledFunction h;
  SampledFunction env;
  SampledFunction lsc;
  double denv;
  double dx;
  double inf;
};

Bundle make_bundle(const CorpusEntry& entry, std::vector<int> res) {
  SampledFunction h = build_corpus_function(entry, res);
  DualGrid dual = build_dual_grid(h);
  SampledFunction env = envelope_hull(h);
  SampledFunction lsc = lsc_hull(h);
  double denv = envelope_tolerance(h, dual);
  double dx = h.grid().max_spacing();
  double inf = infimum(h).value();
  return Bundle{entry, std::move(res), std::move(h), std::move(env), std::move(lsc),
                denv, dx, inf};
}

int failures = 0;

void report(int id, const std::string& desc, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << desc;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << "\n";
  if (!pass) ++failures;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << v;
  return ss.str();
}

SampledFunction double_well_400() {
  CorpusEntry dw;
  dw.expression = "(x^2-1)^2";
  dw.lower = {-2.0};
  dw.upper = {2.0};
  dw.resolution = {400};
  return build_corpus_function(dw);
}

ConvexBody segment(double a, double b) { return convex_hull({Point(a), Point(b)}, 1); }

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path = argc > 1 ? argv[1] : "";
  std::string specs_dir = argc > 2 ? argv[2] : "";

  std::vector<Bundle> bundles;
  for (const auto& entry : bundled_corpus()) {
    if (entry.is_box && entry.lower.size() == 1) {
      bundles.push_back(make_bundle(entry, {100}));
      bundles.push_back(make_bundle(entry, {1000}));
    } else {
      bundles.push_back(make_bundle(entry, entry.resolution));
    }
  }
  SampledFunction dw400 = double_well_400();
  DualGrid dw_dual = build_dual_grid(dw400);
  SampledFunction dw_env = envelope_hull(dw400);
  double dw_denv = envelope_tolerance(dw400, dw_dual);
  double dw_dx = dw400.grid().max_spacing();

  // ---- 1: inf h = inf Gamma(h) --------------------------------------------
  {
    bool pass = true;
    std::string detail;
    double worst = 0.0;
    for (const auto& b : bundles) {
      double gap = std::abs(b.inf - infimum(b.env).value());
      worst = std::max(worst, gap);
      if (gap > b.denv) {
        pass = false;
        detail = b.entry.name + " gap " + fmt(gap) + " > " + fmt(b.denv);
      }
    }
    double dw_gap = std::abs(infimum(dw400).value() - infimum(dw_env).value());
    if (dw_denv > 0.15 || dw_gap > 1e-6) pass = false;
    if (detail.empty())
      detail = "worst corpus gap " + fmt(worst) + "; double well res 400: delta_env " +
               fmt(dw_denv) + " <= 0.15, gap " + fmt(dw_gap) + " <= 1e-6";
    report(1, "envelope preserves the infimum on the corpus", pass, detail);
  }

  // ---- 2: M = co(Omega) ----------------------------------------------------
  {
    bool pass = true;
    std::string detail;
    double worst = 0.0;
    for (const auto& b : bundles) {
      double tol = 2.0 * b.dx;  // spacing-scaled, matched on both sides
      ConvexBody m = envelope_minimizers_from(b.env, tol);
      PointSet omega = generalized_minimizers_from(b.lsc, b.inf, tol);
      double gap = hausdorff(m, convex_hull(omega, b.h.grid().dim()));
      worst = std::max(worst, gap / b.dx);
      if (gap > 2.0 * b.dx) {
        pass = false;
        detail = b.entry.name + " set gap " + fmt(gap) + " > 2dx";
      }
    }
    ConvexBody m400 = envelope_minimizers_from(dw_env, 1e-9);
    PointSet omega400 = generalized_minimizers_from(lsc_hull(dw400), 0.0, 1e-9);
    double d400 = hausdorff(m400, convex_hull(omega400, 1));
    double dm = hausdorff(m400, segment(-1.0, 1.0));
    if (d400 > 0.01 + 1e-9 || dm > 1e-9) pass = false;
    if (detail.empty())
      detail = "worst corpus gap " + fmt(worst) + " dx; double well res 400: M = [-1,1], "
               "distance " + fmt(d400) + " <= 0.01";
    report(2, "envelope minimizers equal the hull of generalized minimizers", pass, detail);
  }

  // ---- 3: E(M) inside the generalized minimizer set ------------------------
  {
    bool pass = true;
    std::string detail;
    bool strict_seen = false;
    for (const auto& b : bundles) {
      double tol = 2.0 * b.dx;
      ConvexBody m = envelope_minimizers_from(b.env, tol);
      PointSet omega = generalized_minimizers_from(b.lsc, b.inf, tol);
      double bound = 2.0 * b.dx;
      for (const auto& v : extreme_points(m))
        if (omega.min_dist(v) > bound) {
          pass = false;
          detail = b.entry.name + " vertex escapes by " + fmt(omega.min_dist(v));
        }
      if (b.entry.name == "three_well") {
        // strict inclusion: the middle well is a generalized minimizer but
        // not an extreme point of M
        PointSet em = extreme_points(m);
        if (omega.min_dist(Point(0.0)) <= bound && em.min_dist(Point(0.0)) > 0.5)
          strict_seen = true;
      }
    }
    if (!strict_seen) {
      pass = false;
      detail += " (three-well strict inclusion not observed)";
    }
    report(3, "extreme envelope minimizers are generalized minimizers", pass, detail);
  }

  // ---- 4: Fenchel-Young equality on subdifferential vertices ---------------
  {
    bool pass = true;
    std::string detail;
    double worst_resid = 0.0;
    for (const auto& b : bundles) {
      DualGrid dual = build_dual_grid(b.h);
      std::mt19937_64 rng(0xC4C4ULL + b.h.size());
      std::uniform_int_distribution<std::size_t> pick(0, dual.grid->size() - 1);
      double sub_tol = 2.0 * b.dx;
      double lip_h = lipschitz_estimate(b.h);
      for (int t = 0; t < 20; ++t) {
        const Point& p = dual.grid->node(pick(rng));
        double hstar = -1e300, inf_t = 1e300;
        for (std::size_t i = 0; i < b.h.size(); ++i)
          if (b.h.value(i).finite()) {
            double term = detail::conj_term(p, b.h.grid().node(i), b.h.value(i).value());
            hstar = std::max(hstar, term);
            inf_t = std::min(inf_t, -term);
          }
        ConvexBody sub = subdifferential(b.h, AffineFunction::linear(p), sub_tol);
        // vertices leaked by the one-cell lsc erosion pay an extra bounded
        // slope term; attaining vertices meet the strict bound
        double leak_bound = b.denv + sub_tol + 1.5 * (lip_h + norm2(p)) * b.dx;
        for (const auto& v : sub.vertices) {
          double gamma = 0.0, hv = 0.0;
          bool found = false;
          for (std::size_t i = 0; i < b.h.size() && !found; ++i)
            if (dist2(b.h.grid().node(i), v) == 0.0) {
              if (!b.env.value(i).finite()) break;  // erosion past the domain
              gamma = b.env.value(i).value();
              hv = b.h.value(i).value();
              found = true;
            }
          if (!found) continue;
          double resid = std::abs(hstar + gamma - dot(p, v));
          bool attains = hv - dot(p, v) <= inf_t + sub_tol + 1e-12;
          double bound = attains ? b.denv + sub_tol : leak_bound;
          worst_resid = std::max(worst_resid, resid - bound);
          if (resid > bound) {
            pass = false;
            detail = b.entry.name + " residual " + fmt(resid);
          }
        }
      }
    }
    ConvexBody sub0 = subdifferential(dw400, AffineFunction::linear(Point(0.0)), 1e-9);
    double d0 = hausdorff(sub0, segment(-1.0, 1.0));
    if (d0 > 0.01 + 1e-9) {
      pass = false;
      detail += " dw subdiff(0) off by " + fmt(d0);
    }
    if (detail.empty())
      detail = "20 seeded dual nodes per function; dw res 400: subdiff(0) = [-1,1] within " +
               fmt(d0);
    report(4, "subdifferential vertices satisfy Fenchel-Young equality", pass, detail);
  }

  // ---- 5: T-sets bound the subdifferential ---------------------------------
  {
    bool pass = true;
    std::string detail;
    std::vector<double> radii = {0.5, 0.25, 0.1};
    try {
      CorollaryLRReport lr = check_corollary_LR(dw400, AffineFunction::linear(Point(0.0)), radii);
      for (auto n : lr.ystar_count_per_radius)
        if (n == 0) pass = false;
      if (!lr.included) pass = false;
      LimitingGradients lim = limiting_gradients(dw400, AffineFunction::linear(Point(0.0)), radii);
      if (lim.intersection.min_dist(Point(1.0)) > 2.0 * dw_dx ||
          lim.intersection.min_dist(Point(-1.0)) > 2.0 * dw_dx)
        pass = false;
      detail = "kink p=0: T_0 = {-1,+1}, excess " + fmt(lr.excess);

      DualGrid dual = build_dual_grid(dw400);
      auto scan = differentiability_scan(dw400, dual, default_width_tol(dw400));
      std::mt19937_64 rng(0x5077ULL);
      std::uniform_int_distribution<std::size_t> pick(0, scan.ystar.size() - 1);
      int tested = 0;
      for (int t = 0; t < 200 && tested < 10; ++t) {
        const Point& p = scan.ystar[pick(rng)];
        if (std::abs(p[0]) < 0.5) continue;  // stay away from the kink
        ++tested;
        CorollaryLRReport r = check_corollary_LR(dw400, AffineFunction::linear(p), radii);
        if (!r.included) {
          pass = false;
          detail += " smooth point p=" + fmt(p[0]) + " excess " + fmt(r.excess);
        }
      }
      detail += ", " + std::to_string(tested) + " smooth points";
    } catch (const Error& e) {
      pass = false;
      detail = e.what();
    }
    report(5, "subdifferentials lie in the hull of limiting gradients", pass, detail);
  }

  // ---- 6: lsc hull preserves infima and minimizers -------------------------
  {
    bool pass = true;
    std::string detail;
    bool spike_ok = false;
    for (const auto& b : bundles) {
      if (infimum(b.lsc).value() != b.inf) {
        pass = false;
        detail = b.entry.name + " inf changed";
      }
      PointSet omega = generalized_minimizers_from(b.lsc, b.inf, 0.0);
      std::vector<Point> brute;
      for (std::size_t i = 0; i < b.lsc.size(); ++i)
        if (b.lsc.value(i).finite() && b.lsc.value(i).value() == b.inf)
          brute.push_back(b.h.grid().node(i));
      PointSet bs(brute, b.h.grid().domain().epsilon_geom());
      bool same = bs.size() == omega.size();
      for (const auto& q : bs)
        if (omega.min_dist(q) != 0.0) same = false;
      if (!same) {
        pass = false;
        detail = b.entry.name + " argmin sets differ";
      }
      if (b.entry.name == "spike") {
        // h never attains its infimum at 0, h_0 does
        for (std::size_t i = 0; i < b.h.size(); ++i)
          if (b.h.grid().node(i)[0] == 0.0)
            if (b.h.value(i).value() > b.inf && b.lsc.value(i).value() == b.inf)
              spike_ok = true;
      }
    }
    if (!spike_ok) {
      pass = false;
      detail += " (spike attainment transfer not observed)";
    }
    report(6, "lsc hull: same infimum, same minimizer set", pass, detail);
  }

  // ---- 7: envelope is the identity exactly on convex members ---------------
  {
    bool pass = true;
    std::string detail;
    for (const auto& b : bundles) {
      bool is_convex = check_convexity(b.h).is_grid_convex;
      if (is_convex != b.entry.grid_convex) {
        pass = false;
        detail = b.entry.name + " convexity classification flipped";
      }
      if (b.entry.grid_convex) {
        for (std::size_t i = 0; i < b.h.size(); ++i)
          if (!(b.env.value(i) == b.h.value(i))) {
            pass = false;
            detail = b.entry.name + " envelope differs at a node";
            break;
          }
      } else {
        bool strictly_below = false;
        for (std::size_t i = 0; i < b.h.size(); ++i)
          if (b.h.value(i).finite() &&
              b.env.value(i).value() < b.h.value(i).value() - 1e-12)
            strictly_below = true;
        if (!strictly_below) {
          pass = false;
          detail = b.entry.name + " envelope never strictly below";
        }
      }
    }
    report(7, "envelope fixed point iff grid-convex", pass, detail);
  }

  // ---- 8: oracle equivalences ----------------------------------------------
  {
    bool pass = true;
    std::string detail;
    std::uint64_t worst_ulp = 0;

    std::mt19937_64 rng1(0x8A11ULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto g1 = build_grid(Domain::box({0.0}, {1.0}), {999});
    for (int t = 0; t < 100; ++t) {
      std::vector<ExtReal> vals;
      vals.reserve(g1->size());
      for (std::size_t i = 0; i < g1->size(); ++i) vals.emplace_back(u(rng1));
      SampledFunction h(g1, std::move(vals));
      DualGrid dual = build_dual_grid(h, {999});
      SampledFunction fast = conjugate_fast(h, dual);
      SampledFunction naive = conjugate_naive(h, dual);
      for (std::size_t j = 0; j < fast.size(); ++j)
        worst_ulp = std::max(worst_ulp,
                             ulp_distance(fast.value(j).value(), naive.value(j).value()));
    }
    auto g2 = build_grid(Domain::box({0.0, 0.0}, {1.0, 1.0}), {128, 128});
    for (int t = 0; t < 10; ++t) {
      std::vector<ExtReal> vals;
      vals.reserve(g2->size());
      for (std::size_t i = 0; i < g2->size(); ++i) vals.emplace_back(u(rng1));
      SampledFunction h(g2, std::move(vals));
      DualGrid dual = build_dual_grid(h, {64, 64});
      SampledFunction fast = conjugate_fast(h, dual);
      SampledFunction naive = conjugate_naive(h, dual);
      for (std::size_t j = 0; j < fast.size(); ++j)
        worst_ulp = std::max(worst_ulp,
                             ulp_distance(fast.value(j).value(), naive.value(j).value()));
    }
    if (worst_ulp > 4) {
      pass = false;
      detail = "conjugate ulp " + std::to_string(worst_ulp);
    }

    double worst_env = 0.0;
    for (const auto& b : bundles) {
      SampledFunction bic = envelope_biconjugate(b.h);
      for (std::size_t i = 0; i < b.h.size(); ++i) {
        if (b.env.value(i).finite() != bic.value(i).finite()) {
          pass = false;
          detail = b.entry.name + " envelope masks differ";
          break;
        }
        if (b.env.value(i).finite()) {
          double gap = std::abs(b.env.value(i).value() - bic.value(i).value());
          worst_env = std::max(worst_env, gap / b.denv);
          if (gap > b.denv) {
            pass = false;
            detail = b.entry.name + " envelope routes differ by " + fmt(gap);
          }
        }
      }
    }
    if (detail.empty())
      detail = "conjugates within " + std::to_string(worst_ulp) +
               " ulp; envelope routes within " + fmt(worst_env) + " of delta_env";
    report(8, "fast transforms match their oracles", pass, detail);
  }

  // ---- 9: representing measures --------------------------------------------
  {
    bool pass = true;
    std::string detail;
    for (const auto& b : bundles) {
      double eps_geom = b.h.grid().domain().epsilon_geom();
      std::mt19937_64 rng(0xBA27ULL + b.h.size());
      std::uniform_int_distribution<std::size_t> pick(0, b.h.size() - 1);
      int done = 0;
      for (int attempt = 0; attempt < 5000 && done < 50; ++attempt) {
        std::size_t i = pick(rng);
        if (!b.env.value(i).finite()) continue;
        ++done;
        DiscreteMeasure mu = representing_measure(b.h, i);
        double wsum = 0.0, integral = 0.0;
        for (const auto& atom : mu.support()) {
          wsum += atom.weight;
          bool found = false;
          for (std::size_t k = 0; k < b.h.size() && !found; ++k)
            if (dist2(b.h.grid().node(k), atom.point) <= eps_geom) {
              integral += atom.weight * b.h.value(k).value();
              found = true;
            }
          if (!found) pass = false;
        }
        if (dist2(mu.barycenter(), b.h.grid().node(i)) > eps_geom ||
            std::abs(wsum - 1.0) > 1e-12 ||
            std::abs(integral - b.env.value(i).value()) > b.denv) {
          pass = false;
          detail = b.entry.name + " measure contract violated at node " + std::to_string(i);
        }
      }
    }
    DiscreteMeasure mu0 = representing_measure(dw400, 200);
    bool dw_ok = mu0.size() == 2 && std::abs(mu0.support()[0].weight - 0.5) <= 1e-9 &&
                 std::abs(mu0.support()[1].weight - 0.5) <= 1e-9 &&
                 std::abs(mu0.support()[0].point[0] + 1.0) <= 1e-9 &&
                 std::abs(mu0.support()[1].point[0] - 1.0) <= 1e-9;
    if (!dw_ok) {
      pass = false;
      detail += " dw flat-facet weights are not (1/2, 1/2)";
    }
    if (detail.empty()) detail = "50 seeded nodes per function; dw weights (1/2, 1/2) at (-1, +1)";
    report(9, "representing measures integrate h to the envelope", pass, detail);
  }

  // ---- 10: Bauer maximum principle -----------------------------------------
  {
    bool pass = true;
    std::string detail;
    auto box = build_grid(Domain::box({-1.0, -1.0}, {1.0, 1.0}), {32, 32});
    Domain tri_dom = Domain::polytope2d({Point(0.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0)});
    auto tri = build_grid(tri_dom, {32, 32});
    const char* minus[] = {"x^2+y^2", "abs(x)+abs(y)", "exp(x)+y^2", "(x+y)^2", "max(x,-x)"};
    const char* plus[] = {"x+y", "2*x-y", "1-x", "0.5*y", "x"};
    double worst = 0.0;
    for (const auto& g : {box, tri}) {
      for (int i = 0; i < 5; ++i) {
        ExprPtr em = parse(minus[i]), ep = parse(plus[i]);
        SampledFunction hm = sample(g, [&](const Point& p) { return eval(em, p); });
        SampledFunction hp = sample(g, [&](const Point& p) { return eval(ep, p); });
        BauerReport rep = check_bauer(hm, hp);
        worst = std::max(worst, rep.gap);
        if (rep.gap < -1e-9 || rep.gap > rep.lipschitz * g->max_spacing() + 1e-9) {
          pass = false;
          detail = std::string(minus[i]) + " + " + plus[i] + " gap " + fmt(rep.gap);
        }
      }
    }
    if (detail.empty()) detail = "10 convex pairs on square and triangle, worst gap " + fmt(worst);
    report(10, "sums of convex functions peak at extreme nodes", pass, detail);
  }

  // ---- 11: nested exhaustion -----------------------------------------------
  {
    bool pass = true;
    std::string detail;
    for (int res : {100, 1000}) {
      CorpusEntry tw;
      tw.expression = "min(min((x+1)^2,x^2),(x-1)^2)";
      tw.lower = {-2.0};
      tw.upper = {2.0};
      tw.resolution = {res};
      SampledFunction h = build_corpus_function(tw);
      double dx = h.grid().max_spacing();
      ConvexBody window = segment(-0.5, 0.5);
      ExhaustionReport rep = nested_exhaustion(h, {window}, 1e-9);
      if (!rep.gate_passed[0] || std::abs(rep.restricted_inf[0] - infimum(h).value()) > 1e-9) {
        pass = false;
        detail = "gate failed at res " + std::to_string(res);
      }
      if (rep.recovered.min_dist(Point(0.0)) > 2.0 * dx) {
        pass = false;
        detail = "middle well missed at res " + std::to_string(res);
      }
      // E(M) alone misses the middle well
      ConvexBody m = envelope_minimizers(h, 1e-9);
      if (extreme_points(m).min_dist(Point(0.0)) < 0.5) pass = false;
      // certification: recovered points are generalized minimizers
      PointSet omega = generalized_minimizers(h, 1e-9);
      for (const auto& p : rep.recovered)
        if (omega.min_dist(p) > 2.0 * dx) {
          pass = false;
          detail = "uncertified recovery at res " + std::to_string(res);
        }
    }
    if (detail.empty()) detail = "three-well family {[-0.5,0.5]} recovers the middle well";
    report(11, "nested exhaustion finds minimizers beyond E(M)", pass, detail);
  }

  // ---- CLI end-to-end (supports the verify invariant) -----------------------
  if (!cli_path.empty() && !specs_dir.empty()) {
    std::string cmd = "\"" + cli_path + "\" verify --spec \"" + specs_dir +
                      "/double_well.spec\" --out /tmp/gammareg_accept >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    bool ok = rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
    std::cout << (ok ? "PASS" : "FAIL") << " cli: bundled verify exits 0\n";
    if (!ok) ++failures;
  }

  std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
            << "\n";
  return failures == 0 ? 0 : 1;
}
