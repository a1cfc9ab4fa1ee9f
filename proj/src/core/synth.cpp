#include "synth.hpp"

#include <algorithm>
#include <cmath>

#include "design.hpp"
#include "rng.hpp"

namespace graud {

GraphFamily graph_family_from_name(const std::string& name) {
  if (name == "path") return GraphFamily::Path;
  if (name == "cycle") return GraphFamily::Cycle;
  if (name == "star") return GraphFamily::Star;
  if (name == "grid") return GraphFamily::Grid;
  fail(ErrorCode::InvalidArgument, "unknown graph family '" + name + "'");
}

std::string graph_family_name(GraphFamily family) {
  switch (family) {
    case GraphFamily::Path: return "path";
    case GraphFamily::Cycle: return "cycle";
    case GraphFamily::Star: return "star";
    case GraphFamily::Grid: return "grid";
  }
  return "path";
}

Graph make_family_graph(GraphFamily family, int M) {
  if (M < 2) fail(ErrorCode::InvalidArgument, "family graphs need at least 2 nodes");
  std::vector<std::pair<int, int>> edges;
  switch (family) {
    case GraphFamily::Path:
      for (int i = 0; i + 1 < M; ++i) edges.push_back({i, i + 1});
      break;
    case GraphFamily::Cycle:
      for (int i = 0; i + 1 < M; ++i) edges.push_back({i, i + 1});
      edges.push_back({M - 1, 0});
      break;
    case GraphFamily::Star:
      for (int i = 1; i < M; ++i) edges.push_back({0, i});
      break;
    case GraphFamily::Grid: {
      // largest divisor <= sqrt(M) gives the row count; primes degenerate to 1 x M
      int rows = 1;
      for (int r = 1; r * r <= M; ++r)
        if (M % r == 0) rows = r;
      int cols = M / rows;
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
          int k = i * cols + j;
          if (j + 1 < cols) edges.push_back({k, k + 1});
          if (i + 1 < rows) edges.push_back({k, k + cols});
        }
      break;
    }
  }
  return build_graph(M, edges);
}

Eigen::MatrixXd generate_features(int M, int K, std::uint64_t rng_seed) {
  if (K < 1) fail(ErrorCode::InvalidArgument, "K must be >= 1");
  if (K >= M)
    fail(ErrorCode::FullRowRank,
         "K >= M would let the features span R^M and destroy identifiability");
  auto gen = make_rng(rng_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd X(M, K);
  for (int i = 0; i < M; ++i)
    for (int k = 0; k < K; ++k) X(i, k) = 2.0 + normal(gen);
  return X;
}

Eigen::VectorXd generate_probs(const Graph& g, double mean, double sd, double clip_lo,
                               double clip_hi, double smoothness_cap, std::uint64_t rng_seed,
                               long max_attempts, long* attempts_out) {
  if (!(0.0 < clip_lo && clip_lo < clip_hi && clip_hi < 1.0))
    fail(ErrorCode::InvalidArgument, "clip interval must satisfy 0 < lo < hi < 1");
  if (smoothness_cap <= 0.0) fail(ErrorCode::InvalidArgument, "smoothness cap must be positive");
  if (sd < 0.0) fail(ErrorCode::InvalidArgument, "sd must be nonnegative");
  if (max_attempts < 1) fail(ErrorCode::InvalidArgument, "max_attempts must be positive");
  auto gen = make_rng(rng_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd p(g.node_count);
  for (long attempt = 1; attempt <= max_attempts; ++attempt) {
    for (int i = 0; i < g.node_count; ++i)
      p[i] = std::clamp(mean + sd * normal(gen), clip_lo, clip_hi);
    if (laplacian_quadratic(g, p) <= smoothness_cap) {
      if (attempts_out) *attempts_out = attempt;
      return p;
    }
  }
  fail(ErrorCode::SmoothnessUnreachable,
       "no sample met the smoothness cap within " + std::to_string(max_attempts) + " attempts");
}

Eigen::VectorXd sample_binomial_vector(const Eigen::VectorXd& n, const Eigen::VectorXd& p,
                                       std::uint64_t rng_seed) {
  if (n.size() != p.size()) fail(ErrorCode::DimensionMismatch, "n and p lengths differ");
  auto gen = make_rng(rng_seed);
  Eigen::VectorXd y(n.size());
  for (Eigen::Index i = 0; i < n.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0))
      fail(ErrorCode::InvalidProbability, "p[" + std::to_string(i) + "] outside [0,1]");
    auto trials = static_cast<long long>(std::llround(n[i]));
    if (trials < 1 || std::abs(n[i] - static_cast<double>(trials)) > 1e-9)
      fail(ErrorCode::InvalidArgument, "trial counts must be positive integers");
    if (p[i] <= 0.0) {
      y[i] = 0.0;
    } else if (p[i] >= 1.0) {
      y[i] = static_cast<double>(trials);
    } else {
      std::binomial_distribution<long long> binom(trials, p[i]);
      y[i] = static_cast<double>(binom(gen));
    }
  }
  return y;
}

Scenario make_scenario(int M, int K, const GeneratorSettings& settings, std::uint64_t seed) {
  Scenario sc;
  sc.seed = seed;
  sc.settings = settings;
  sc.graph = make_family_graph(settings.family, M);
  sc.beta0 = Eigen::VectorXd::Ones(K);

  // Features are offset + standard normal. The default offset is 2; a requested
  // minimum count k moves the offset so that min over nodes of X beta0 equals
  // log k exactly. Keeping the shift inside the features (rather than adding a
  // constant to X beta0 afterwards) keeps the count field inside the span the
  // projector H annihilates, so the residual energy u0^T H u0 stays at
  // rounding-noise level for every k.
  Eigen::MatrixXd Z = generate_features(M, K, derive_seed(seed, 0));
  Z.array() -= 2.0;
  double offset = 2.0;
  if (settings.min_count > 0) {
    double zmin = (Z * sc.beta0).minCoeff();
    offset = (std::log(static_cast<double>(settings.min_count)) - zmin) / static_cast<double>(K);
  }
  sc.X = Z.array() + offset;

  Eigen::VectorXd s = sc.X * sc.beta0;
  if (settings.sigma_n > 0.0) {
    auto gen = make_rng(derive_seed(seed, 3));
    std::normal_distribution<double> normal(0.0, settings.sigma_n);
    for (Eigen::Index i = 0; i < s.size(); ++i) s[i] += normal(gen);
  }
  sc.n0 = s.array().exp().round().max(1.0);

  sc.p0 = generate_probs(sc.graph, settings.p_mean, settings.p_sd, settings.clip_lo,
                         settings.clip_hi, settings.smoothness_cap, derive_seed(seed, 1),
                         settings.max_attempts, &sc.prob_attempts);
  sc.y = sample_binomial_vector(sc.n0, sc.p0, derive_seed(seed, 2));

  DesignBasis basis = projection_matrix(sc.X);
  Eigen::VectorXd u0 = sc.n0.array().log();
  Eigen::VectorXd v0 = sc.p0.array().log();
  sc.n0_quad_h = sc.n0.dot(basis.projector * sc.n0);
  sc.u0_quad_h = u0.dot(basis.projector * u0);
  sc.p0_quad_l = laplacian_quadratic(sc.graph, sc.p0);
  sc.v0_quad_l = laplacian_quadratic(sc.graph, v0);
  return sc;
}

}  // namespace graud
