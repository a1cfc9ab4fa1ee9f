#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "design.hpp"
#include "solver.hpp"
#include "synth.hpp"

namespace graud {

double relative_l1_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth);

struct RecoveryBound {
  double eps_y_sq = 0.0;  // ||y_log - u0 - v0||^2
  double eps_u = 0.0;     // u0^T H u0
  double eps_v = 0.0;     // v0^T L v0
  double c0 = 0.0;
  double bound_u = 0.0;
  double bound_v = 0.0;
  double delta1_value = 0.0;
};

// Bound on ||u* - u0||^2 and ||v* - v0||^2 from the noise energies and the
// spectral constants of the instance. Requires lambda1, lambda2 > 0 and a
// nonvanishing delta1.
RecoveryBound recovery_bound(const Scenario& scenario, const ProblemInstance& inst);

struct TailBound {
  double delta = 0.0;
  double mu = 0.0;
  double upper = 0.0;  // bound on P(y >= (1+delta) mu): exp(-delta^2 mu / 3)
  double lower = 0.0;  // bound on P(y <= (1-delta) mu): exp(-delta^2 mu / 2)
};

TailBound chernoff_tail_bounds(long long n, double p, double delta);

struct ConcentrationResult {
  double linear_freq = 0.0;   // frequency of |y - np| >= n^(1/2+eps)
  double linear_bound = 0.0;  // 2 exp(-n^(2 eps) / (3 p))
  double log_freq = 0.0;      // frequency of |log y - log n - log p| >= n^(-1/2+eps)/p, y >= 1
  long log_samples = 0;       // samples with y >= 1 entering log_freq
};

// Valid eps range is (0, 0.25].
ConcentrationResult concentration_check(long long n, double p, double eps, long trials,
                                        std::uint64_t rng_seed);

struct CvRow {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  int fold = 0;
  double score = 0.0;
};

struct CvResult {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::vector<CvRow> table;
};

struct CvOptions {
  double pseudocount = 0.0;  // <= 0 demands y >= 1
  SolverConfig solver;
};

// Node-level K-fold cross-validation: fidelity restricted to training nodes,
// regularizers stay global, score is the held-out squared residual of y_log
// against u+v. Ties break toward smaller lambda1, then smaller lambda2.
CvResult cross_validate(const Eigen::VectorXd& y, const Graph& g, const Eigen::MatrixXd& X,
                        const std::vector<double>& lambda1_grid,
                        const std::vector<double>& lambda2_grid, int folds,
                        std::uint64_t rng_seed, const CvOptions& options);

// Spearman rank correlation with average ranks on ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace graud
