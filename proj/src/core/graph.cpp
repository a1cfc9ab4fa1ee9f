#include "graph.hpp"

#include <algorithm>
#include <set>

namespace graud {

Graph build_graph(int node_count, const std::vector<std::pair<int, int>>& edges) {
  if (node_count < 1) fail(ErrorCode::InvalidArgument, "node_count must be >= 1");
  std::set<std::pair<int, int>> canon;
  for (auto [i, j] : edges) {
    if (i == j) fail(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(i));
    if (i < 0 || j < 0 || i >= node_count || j >= node_count)
      fail(ErrorCode::IndexOutOfRange,
           "edge (" + std::to_string(i) + "," + std::to_string(j) + ") outside [0," +
               std::to_string(node_count) + ")");
    canon.insert({std::min(i, j), std::max(i, j)});
  }
  Graph g;
  g.node_count = node_count;
  g.edges.assign(canon.begin(), canon.end());
  return g;
}

Eigen::MatrixXd laplacian(const Graph& g) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.node_count, g.node_count);
  for (auto [i, j] : g.edges) {
    L(i, i) += 1.0;
    L(j, j) += 1.0;
    L(i, j) -= 1.0;
    L(j, i) -= 1.0;
  }
  return L;
}

double laplacian_quadratic(const Graph& g, const Eigen::VectorXd& x) {
  if (x.size() != g.node_count)
    fail(ErrorCode::DimensionMismatch, "vector length " + std::to_string(x.size()) +
                                           " != node count " + std::to_string(g.node_count));
  double q = 0.0;
  for (auto [i, j] : g.edges) {
    double d = x[i] - x[j];
    q += d * d;
  }
  return q;  // each edge counted once equals 1/2 * sum over ordered pairs
}

std::vector<int> connected_components(const Graph& g) {
  std::vector<std::vector<int>> adj(g.node_count);
  for (auto [i, j] : g.edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<int> label(g.node_count, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < g.node_count; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (label[w] < 0) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return label;
}

bool is_connected(const Graph& g) {
  auto label = connected_components(g);
  return std::all_of(label.begin(), label.end(), [](int c) { return c == 0; });
}

void require_symmetric(const Eigen::MatrixXd& m, const char* name) {
  if (m.rows() != m.cols())
    fail(ErrorCode::DimensionMismatch, std::string(name) + " is not square");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    fail(ErrorCode::InvalidArgument, std::string(name) + " is not symmetric");
}

double smallest_nonzero_eigenvalue(const Eigen::MatrixXd& m, double zero_tol) {
  require_symmetric(m, "matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double scale = std::max(1.0, std::abs(ev[ev.size() - 1]));
  if (ev[0] < -1e-10 * scale)
    fail(ErrorCode::NotPsd, "smallest eigenvalue " + std::to_string(ev[0]) + " is negative");
  for (int i = 0; i < ev.size(); ++i)
    if (ev[i] > zero_tol) return ev[i];
  fail(ErrorCode::AllZeroSpectrum, "no eigenvalue above zero tolerance");
}

double largest_eigenvalue(const Eigen::MatrixXd& m) {
  require_symmetric(m, "matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[m.rows() - 1];
}

}  // namespace graud
