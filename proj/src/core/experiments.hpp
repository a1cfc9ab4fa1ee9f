#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "solver.hpp"
#include "synth.hpp"

namespace graud {

struct ExperimentParams {
  int m = 10;
  int k = 3;
  long reps = 100;  // repetitions per sweep point, or seed count for m20/convergence
  std::uint64_t base_seed = 20260814;
  double lambda1 = 0.01;
  double lambda2 = 0.9;
  double pseudocount = 0.5;  // harness runs always log (y + c); recorded in metadata
  GraphFamily family = GraphFamily::Path;
  long max_attempts = 200000;  // generous rejection budget for tight smoothness caps
  SolverConfig solver{50, 4000, 0.0, 1e-10, true};
};

struct ExperimentSummary {
  std::string name;
  std::map<std::string, double> values;
  std::vector<std::string> files;  // paths written, relative to out_dir
};

ExperimentParams default_experiment_params(const std::string& name);

// Names: convergence, sweep-min-count, sweep-smoothness, m20.
ExperimentSummary run_experiment(const std::string& name, const ExperimentParams& params,
                                 const std::string& out_dir);

// Per-seed relative l1 errors (n, p) for replica-style scenarios; shared by the
// m20 harness and the acceptance suite.
std::vector<std::pair<double, double>> replica_errors(const ExperimentParams& params,
                                                      const GeneratorSettings& gen, long seeds);

}  // namespace graud
