#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sws/config.hpp"

namespace sws {

class UnknownExperiment : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& experiment_names();

struct ExperimentContext {
  DeviceConfig config;
  std::string out_dir;  // empty: nothing is written
  std::uint64_t seed = 1;
  int truncation = 2;
  bool include_static_kerr = false;
  int irb_samples = 500;
};

struct ExperimentOutput {
  std::string name;
  std::string csv;
  std::string json;
  std::string txt;
};

// Writes <name>.csv, <name>.json and <name>.txt into ctx.out_dir.
ExperimentOutput run_experiment(const std::string& name, const ExperimentContext& ctx);
void write_outputs(const ExperimentOutput& out, const std::string& dir);

}  // namespace sws
