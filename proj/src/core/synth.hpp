#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "graph.hpp"

namespace graud {

enum class GraphFamily { Path, Cycle, Star, Grid };

GraphFamily graph_family_from_name(const std::string& name);
std::string graph_family_name(GraphFamily family);

// Path (default), cycle, star centered at node 0, or near-square grid.
Graph make_family_graph(GraphFamily family, int node_count);

struct GeneratorSettings {
  double p_mean = 0.7;
  double p_sd = 0.1;
  double clip_lo = 0.05;
  double clip_hi = 0.95;
  double smoothness_cap = 0.02;   // accept p only when p^T L p <= cap
  long min_count = 0;             // > 0 pins min(n0) = k via the constant level of X
  double sigma_n = 0.0;           // optional log-scale noise on counts, default off
  GraphFamily family = GraphFamily::Path;
  long max_attempts = 10000;      // rejection-sampling budget for the smoothness cap
};

struct Scenario {
  Graph graph;
  Eigen::MatrixXd X;       // M x K features
  Eigen::VectorXd beta0;   // all-ones
  Eigen::VectorXd n0;      // true counts (integral values)
  Eigen::VectorXd p0;      // true discovery probabilities
  Eigen::VectorXd y;       // observed counts (integral values)
  std::uint64_t seed = 0;
  GeneratorSettings settings;
  long prob_attempts = 0;  // rejection attempts consumed
  // Diagnostics for the identifiability energies.
  double n0_quad_h = 0.0;  // n0^T H n0
  double u0_quad_h = 0.0;  // (log n0)^T H (log n0)
  double p0_quad_l = 0.0;  // p0^T L p0
  double v0_quad_l = 0.0;  // (log p0)^T L (log p0)
};

// Entries are 2 + independent standard normals. Rejects K >= M (no residual space).
Eigen::MatrixXd generate_features(int M, int K, std::uint64_t rng_seed);

// Rejection sampling of p = clamp(mean + sd * eps, clip) until p^T L p <= cap.
// attempts_out, when given, receives the number of draws consumed.
Eigen::VectorXd generate_probs(const Graph& g, double mean, double sd, double clip_lo,
                               double clip_hi, double smoothness_cap, std::uint64_t rng_seed,
                               long max_attempts = 10000, long* attempts_out = nullptr);

Eigen::VectorXd sample_binomial_vector(const Eigen::VectorXd& n, const Eigen::VectorXd& p,
                                       std::uint64_t rng_seed);

Scenario make_scenario(int M, int K, const GeneratorSettings& settings, std::uint64_t seed);

}  // namespace graud
