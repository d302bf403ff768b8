#include <algorithm>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sws/experiments.hpp"

namespace {

std::string usage() {
  std::string s = "usage: swsim <experiment> --config <path> --out <dir> --seed <int> [--truncation 2|3] "
                  "[--include-static-kerr]\nexperiments:";
  for (const auto& n : sws::experiment_names()) s += " " + n;
  return s + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for the dual-rail swap-wait-swap CZ gate"};
  std::string experiment, config, out;
  std::uint64_t seed = 1;
  int truncation = 2;
  bool kerr = false;
  int irb_samples = 500;
  app.add_option("experiment", experiment, "Experiment name")->required();
  app.add_option("--config", config, "Device configuration (INI, or JSON by extension)")->required();
  app.add_option("--out", out, "Output directory")->required();
  app.add_option("--seed", seed, "Random seed")->required();
  app.add_option("--truncation", truncation, "Photon-number truncation per mode")->check(CLI::IsMember({2, 3}));
  app.add_flag("--include-static-kerr", kerr, "Add the static a2-c and a2-b1 cross-Kerr terms");
  app.add_option("--irb-samples", irb_samples, "Rate samples for irb-accuracy")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << '\n' << usage();
    return 3;
  }

  const auto& names = sws::experiment_names();
  if (std::find(names.begin(), names.end(), experiment) == names.end()) {
    std::cerr << "unknown experiment '" << experiment << "'\n" << usage();
    return 3;
  }

  sws::ExperimentContext ctx;
  try {
    ctx.config = sws::load_config(config);
  } catch (const sws::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  ctx.out_dir = out;
  ctx.seed = seed;
  ctx.truncation = truncation;
  ctx.include_static_kerr = kerr;
  ctx.irb_samples = irb_samples;
  try {
    const auto res = sws::run_experiment(experiment, ctx);
    std::cout << res.txt;
  } catch (const std::exception& e) {
    std::cerr << "experiment error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
