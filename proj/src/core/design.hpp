#pragma once

#include <Eigen/Dense>

#include "graph.hpp"

namespace graud {

// Feature matrix X together with the projector H onto the orthogonal
// complement of its column space: H = I - X (X^T X)^{-1} X^T.
struct DesignBasis {
  Eigen::MatrixXd features;   // M x K
  Eigen::MatrixXd projector;  // M x M, symmetric idempotent
  int column_rank = 0;
};

struct AssumptionReport {
  bool connected = false;
  bool ones_in_null_h = false;   // ones vector inside col(X), i.e. annihilated rank loss
  bool assumption2_holds = false;
  double delta1 = 0.0;
  double lambda_min_l = 0.0;  // smallest nonzero eigenvalue of L
  double lambda_min_h = 0.0;  // smallest nonzero eigenvalue of H
};

DesignBasis projection_matrix(const Eigen::MatrixXd& X);

// Smallest singular value of the M x 2M block [L H].
double delta1(const Eigen::MatrixXd& L, const Eigen::MatrixXd& H);

AssumptionReport check_assumptions(const Graph& g, const DesignBasis& basis);

}  // namespace graud
