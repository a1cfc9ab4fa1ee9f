#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace graud {

// Objective data: || y_log - u - v ||^2 + lambda1 v^T L v + lambda2 u^T H u,
// minimized subject to u >= y_log, v <= 0 when projection is enabled.
struct ProblemInstance {
  Eigen::VectorXd y_log;
  Eigen::MatrixXd L;
  Eigen::MatrixXd H;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  // Optional 0/1 fidelity mask used by cross-validation; empty means all ones.
  Eigen::VectorXd fidelity_weight;
};

ProblemInstance make_problem(const Eigen::VectorXd& y_log, const Eigen::MatrixXd& L,
                             const Eigen::MatrixXd& H, double lambda1, double lambda2);

struct SolverConfig {
  int inner_iters = 50;
  int outer_iters = 2000;
  double step_size = 0.0;  // <= 0 selects 0.9 * 2 / (2 + l2*lmax(H) + l1*lmax(L))
  double stop_threshold = 1e-10;
  bool project_feasible = true;
};

struct Solution {
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  Eigen::VectorXd n_hat;  // exp(u)
  Eigen::VectorXd p_hat;  // exp(v)
  std::vector<double> loss_trace;  // initial loss, then one entry per outer round
  bool converged = false;
  int iterations_used = 0;  // outer rounds executed
  double step_size = 0.0;   // step actually used
};

// log(y) with optional pseudocount: pseudocount <= 0 demands y >= 1 elementwise
// (NonPositiveCount otherwise), pseudocount c > 0 maps y to log(y + c).
Eigen::VectorXd log_counts(const Eigen::VectorXd& y, double pseudocount = 0.0);

// u1 = log y, v1 = 0 (start from "everything observed"). Requires y >= 1.
std::pair<Eigen::VectorXd, Eigen::VectorXd> default_init(const Eigen::VectorXd& y);

double loss(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const ProblemInstance& inst);

std::pair<Eigen::VectorXd, Eigen::VectorXd> gradients(const Eigen::VectorXd& u,
                                                      const Eigen::VectorXd& v,
                                                      const ProblemInstance& inst);

// Euclidean projection onto the box {u >= y_log, v <= 0}.
std::pair<Eigen::VectorXd, Eigen::VectorXd> project_feasible(const Eigen::VectorXd& u,
                                                             const Eigen::VectorXd& v,
                                                             const Eigen::VectorXd& y_log);

// ||u+v||^2 + lambda2 u^T H u + lambda1 v^T L v; one half of the objective's
// directional second difference (the objective is quadratic).
double hessian_quadratic_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                              const ProblemInstance& inst);

double recommended_step_size(const ProblemInstance& inst);

Solution solve(const ProblemInstance& inst, const SolverConfig& cfg,
               std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> init = std::nullopt);

}  // namespace graud
