#include "analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rng.hpp"

namespace graud {

double relative_l1_error(const Eigen::VectorXd& estimate, const Eigen::VectorXd& truth) {
  if (estimate.size() != truth.size())
    fail(ErrorCode::DimensionMismatch, "estimate and truth lengths differ");
  double denom = truth.lpNorm<1>();
  if (denom <= 0.0) fail(ErrorCode::ZeroTruthNorm, "truth vector has zero l1 norm");
  return (estimate - truth).lpNorm<1>() / denom;
}

RecoveryBound recovery_bound(const Scenario& scenario, const ProblemInstance& inst) {
  if (scenario.graph.node_count != inst.y_log.size())
    fail(ErrorCode::DimensionMismatch, "scenario and instance orders differ");
  if (inst.lambda1 <= 0.0 || inst.lambda2 <= 0.0)
    fail(ErrorCode::InvalidArgument, "recovery bound needs strictly positive lambdas");

  RecoveryBound rb;
  rb.delta1_value = delta1(inst.L, inst.H);
  if (rb.delta1_value <= 1e-10)
    fail(ErrorCode::AssumptionViolated, "delta1 vanishes; null(L) meets null(H)");

  Eigen::VectorXd u0 = scenario.n0.array().log();
  Eigen::VectorXd v0 = scenario.p0.array().log();
  Eigen::VectorXd eps_y = inst.y_log - u0 - v0;
  rb.eps_y_sq = eps_y.squaredNorm();
  rb.eps_u = u0.dot(inst.H * u0);
  rb.eps_v = v0.dot(inst.L * v0);

  double lmin_l = smallest_nonzero_eigenvalue(inst.L);
  double lmin_h = smallest_nonzero_eigenvalue(inst.H);
  rb.c0 = 2.0 + 1.0 / std::sqrt(inst.lambda1 * lmin_l) + 1.0 / std::sqrt(inst.lambda2 * lmin_h);
  double common = (2.0 / rb.delta1_value) * rb.c0 * rb.c0 * rb.eps_y_sq;
  rb.bound_u = common + rb.eps_u / lmin_h;
  rb.bound_v = common + rb.eps_v / lmin_l;
  return rb;
}

TailBound chernoff_tail_bounds(long long n, double p, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::InvalidDelta, "delta must lie in (0,1)");
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be positive");
  if (!(p > 0.0 && p <= 1.0)) fail(ErrorCode::InvalidProbability, "p must lie in (0,1]");
  TailBound tb;
  tb.delta = delta;
  tb.mu = static_cast<double>(n) * p;
  tb.upper = std::exp(-delta * delta * tb.mu / 3.0);
  tb.lower = std::exp(-delta * delta * tb.mu / 2.0);
  return tb;
}

ConcentrationResult concentration_check(long long n, double p, double eps, long trials,
                                        std::uint64_t rng_seed) {
  if (!(eps > 0.0 && eps <= 0.25))
    fail(ErrorCode::InvalidEps, "eps outside the tested range (0, 0.25]");
  if (trials < 100) fail(ErrorCode::InvalidArgument, "need at least 100 trials");
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be positive");
  if (!(p > 0.0 && p < 1.0)) fail(ErrorCode::InvalidProbability, "p must lie in (0,1)");

  const double nd = static_cast<double>(n);
  const double linear_threshold = std::pow(nd, 0.5 + eps);
  const double log_threshold = std::pow(nd, -0.5 + eps) / p;
  const double log_np = std::log(nd) + std::log(p);

  auto gen = make_rng(rng_seed);
  std::binomial_distribution<long long> binom(n, p);
  long linear_hits = 0, log_hits = 0, log_samples = 0;
  for (long t = 0; t < trials; ++t) {
    long long y = binom(gen);
    if (std::abs(static_cast<double>(y) - nd * p) >= linear_threshold) ++linear_hits;
    if (y >= 1) {
      ++log_samples;
      if (std::abs(std::log(static_cast<double>(y)) - log_np) >= log_threshold) ++log_hits;
    }
  }
  ConcentrationResult res;
  res.linear_freq = static_cast<double>(linear_hits) / static_cast<double>(trials);
  res.linear_bound = 2.0 * std::exp(-std::pow(nd, 2.0 * eps) / (3.0 * p));
  res.log_freq = log_samples > 0 ? static_cast<double>(log_hits) / static_cast<double>(log_samples) : 0.0;
  res.log_samples = log_samples;
  return res;
}

CvResult cross_validate(const Eigen::VectorXd& y, const Graph& g, const Eigen::MatrixXd& X,
                        const std::vector<double>& lambda1_grid,
                        const std::vector<double>& lambda2_grid, int folds,
                        std::uint64_t rng_seed, const CvOptions& options) {
  const int M = g.node_count;
  if (y.size() != M || X.rows() != M)
    fail(ErrorCode::DimensionMismatch, "counts/features do not match the graph order");
  if (lambda1_grid.empty() || lambda2_grid.empty())
    fail(ErrorCode::InvalidArgument, "lambda grids must be nonempty");
  if (folds < 2 || folds > M)
    fail(ErrorCode::FoldTooSmall, "fold count must lie in [2, node count]");

  Eigen::VectorXd y_log = log_counts(y, options.pseudocount);
  Eigen::MatrixXd L = laplacian(g);
  DesignBasis basis = projection_matrix(X);

  std::vector<int> perm(M);
  std::iota(perm.begin(), perm.end(), 0);
  auto gen = make_rng(rng_seed);
  std::shuffle(perm.begin(), perm.end(), gen);

  CvResult result;
  double best = std::numeric_limits<double>::infinity();
  for (double l1 : lambda1_grid) {
    for (double l2 : lambda2_grid) {
      ProblemInstance inst = make_problem(y_log, L, basis.projector, l1, l2);
      double total = 0.0;
      for (int f = 0; f < folds; ++f) {
        Eigen::VectorXd w = Eigen::VectorXd::Ones(M);
        for (int i = f; i < M; i += folds) w[perm[i]] = 0.0;
        inst.fidelity_weight = w;
        Solution sol = solve(inst, options.solver);
        double score = 0.0;
        for (int i = f; i < M; i += folds) {
          int node = perm[i];
          double r = y_log[node] - sol.u[node] - sol.v[node];
          score += r * r;
        }
        result.table.push_back({l1, l2, f, score});
        total += score;
      }
      if (total < best) {  // strict: earlier (smaller) lambdas win ties
        best = total;
        result.lambda1 = l1;
        result.lambda2 = l2;
      }
    }
  }
  return result;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    fail(ErrorCode::InvalidArgument, "spearman needs two equal-length series of size >= 2");
  auto ranks = [](const std::vector<double>& x) {
    const size_t n = x.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return x[i] < x[j]; });
    std::vector<double> r(n);
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
      double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
      for (size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  std::vector<double> ra = ranks(a), rb = ranks(b);
  double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / static_cast<double>(ra.size());
  double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / static_cast<double>(rb.size());
  double num = 0.0, da = 0.0, db = 0.0;
  for (size_t i = 0; i < ra.size(); ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  if (da <= 0.0 || db <= 0.0) return 0.0;
  return num / std::sqrt(da * db);
}

}  // namespace graud
