#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace graud {

// Undirected simple graph. Edges are stored canonically (i < j), deduplicated.
struct Graph {
  int node_count = 0;
  std::vector<std::pair<int, int>> edges;
};

Graph build_graph(int node_count, const std::vector<std::pair<int, int>>& edges);

Eigen::MatrixXd laplacian(const Graph& g);

// 1/2 sum over edges of (x_i - x_j)^2, evaluated edge-wise (not via the dense matrix).
double laplacian_quadratic(const Graph& g, const Eigen::VectorXd& x);

bool is_connected(const Graph& g);

// Component label per node, labels are 0..(num_components-1) in order of first visit.
std::vector<int> connected_components(const Graph& g);

// Smallest eigenvalue strictly above zero_tol of a symmetric PSD matrix.
// Throws NotPsd if an eigenvalue < -1e-10 * ||m||, AllZeroSpectrum if none exceed zero_tol.
double smallest_nonzero_eigenvalue(const Eigen::MatrixXd& m, double zero_tol = 1e-8);

double largest_eigenvalue(const Eigen::MatrixXd& m);

void require_symmetric(const Eigen::MatrixXd& m, const char* name);

}  // namespace graud
