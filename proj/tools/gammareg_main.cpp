#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gammareg/cli_app.hpp"
#include "gammareg/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Discrete convex-envelope toolkit: conjugates, envelopes, "
               "minimizer sets, subdifferentials"};
  app.set_version_flag("--version", gammareg::kVersion);
  app.require_subcommand(1);

  gammareg::cli::Options opt;
  const std::vector<std::string> commands = {"conjugate", "envelope", "lsc-hull",
                                             "minimizers", "subdiff",  "exhaust",
                                             "bauer",     "measure",  "verify"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--spec", opt.spec_path, "problem spec file")->required();
    sub->add_option("--out", opt.out_dir, "output directory (default .)");
    sub->add_option("--tol", opt.tol, "minimizer tolerance override");
    sub->add_option("--threads", opt.threads, "worker threads (1 = bitwise reproducible)");
    sub->add_option("--dual-res", opt.dual_res, "dual grid resolution per axis");
    if (name == "verify")
      sub->add_option("--suite", opt.suite, "check suite: all|theorems|conjugacy|measures");
    sub->callback([&opt, name]() { opt.command = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return gammareg::cli::run(opt);
  } catch (const gammareg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
