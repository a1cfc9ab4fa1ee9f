#include "design.hpp"

#include <cmath>

namespace graud {

DesignBasis projection_matrix(const Eigen::MatrixXd& X) {
  const int M = static_cast<int>(X.rows());
  const int K = static_cast<int>(X.cols());
  if (K < 1 || M < 1) fail(ErrorCode::InvalidArgument, "feature matrix must be nonempty");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-8 * sv[0]) ++rank;
  if (rank < K)
    fail(ErrorCode::RankDeficientColumns,
         "feature matrix has column rank " + std::to_string(rank) + " < " + std::to_string(K));
  if (rank >= M)
    fail(ErrorCode::FullRowRank,
         "feature matrix spans all of R^M; residual projector would be zero");
  Eigen::MatrixXd U = svd.matrixU().leftCols(rank);
  DesignBasis basis;
  basis.features = X;
  basis.projector = Eigen::MatrixXd::Identity(M, M) - U * U.transpose();
  basis.column_rank = rank;
  return basis;
}

double delta1(const Eigen::MatrixXd& L, const Eigen::MatrixXd& H) {
  if (L.rows() != H.rows() || L.cols() != H.cols() || L.rows() != L.cols())
    fail(ErrorCode::DimensionMismatch, "delta1 needs square matrices of equal order");
  Eigen::MatrixXd G = L * L.transpose() + H * H.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
  double lo = es.eigenvalues()[0];
  return lo > 0.0 ? std::sqrt(lo) : 0.0;
}

AssumptionReport check_assumptions(const Graph& g, const DesignBasis& basis) {
  const int M = g.node_count;
  if (basis.projector.rows() != M)
    fail(ErrorCode::DimensionMismatch, "design order " + std::to_string(basis.projector.rows()) +
                                           " != node count " + std::to_string(M));
  AssumptionReport rep;
  rep.connected = is_connected(g);
  const Eigen::MatrixXd& H = basis.projector;
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(M);
  rep.ones_in_null_h = (H * ones).norm() <= 1e-8 * std::sqrt(static_cast<double>(M));

  // null(L) is spanned by the component indicators; some combination of them lies in
  // null(H) = col(X) exactly when the smallest singular value of H * C vanishes.
  auto label = connected_components(g);
  int ncomp = 1 + *std::max_element(label.begin(), label.end());
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(M, ncomp);
  std::vector<int> size(ncomp, 0);
  for (int i = 0; i < M; ++i) ++size[label[i]];
  for (int i = 0; i < M; ++i) C(i, label[i]) = 1.0 / std::sqrt(static_cast<double>(size[label[i]]));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(H * C);
  double smin = svd.singularValues()[svd.singularValues().size() - 1];
  rep.assumption2_holds = smin > 1e-8;

  Eigen::MatrixXd L = laplacian(g);
  try {
    rep.lambda_min_l = smallest_nonzero_eigenvalue(L);
  } catch (const Error&) {
    rep.lambda_min_l = 0.0;  // edgeless graph
  }
  try {
    rep.lambda_min_h = smallest_nonzero_eigenvalue(H);
  } catch (const Error&) {
    rep.lambda_min_h = 0.0;
  }
  rep.delta1 = delta1(L, H);
  return rep;
}

}  // namespace graud
