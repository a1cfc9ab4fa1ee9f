#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "core/graph.hpp"
#include "core/rng.hpp"
#include "core/synth.hpp"

using graud::ErrorCode;
using graud::GeneratorSettings;
using graud::GraphFamily;

namespace {
ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const graud::Error& e) {
    return e.code();
  }
  return ErrorCode::Ok;
}
}  // namespace

TEST_CASE("seed splitting is stateless and collision-averse") {
  CHECK(graud::derive_seed(1, 0) == graud::derive_seed(1, 0));
  CHECK(graud::derive_seed(1, 0) != graud::derive_seed(1, 1));
  CHECK(graud::derive_seed(1, 0) != graud::derive_seed(2, 0));
  CHECK(graud::splitmix64(0) != 0);
}

TEST_CASE("family graphs have the expected shapes") {
  auto path = graud::make_family_graph(GraphFamily::Path, 6);
  CHECK(path.edges.size() == 5);
  CHECK(graud::is_connected(path));

  auto cycle = graud::make_family_graph(GraphFamily::Cycle, 6);
  CHECK(cycle.edges.size() == 6);

  auto star = graud::make_family_graph(GraphFamily::Star, 6);
  CHECK(star.edges.size() == 5);
  for (auto [i, j] : star.edges) CHECK(i == 0);

  // 12 nodes factor into a 3 x 4 grid: 3*3 horizontal + 2*4 vertical edges
  auto grid = graud::make_family_graph(GraphFamily::Grid, 12);
  CHECK(grid.edges.size() == 17);
  CHECK(graud::is_connected(grid));

  // primes degenerate to a 1 x M strip
  auto strip = graud::make_family_graph(GraphFamily::Grid, 7);
  CHECK(strip.edges.size() == 6);

  CHECK(code_of([] { graud::make_family_graph(GraphFamily::Path, 1); }) ==
        ErrorCode::InvalidArgument);

  CHECK(graud::graph_family_from_name("cycle") == GraphFamily::Cycle);
  CHECK(graud::graph_family_name(GraphFamily::Grid) == "grid");
  CHECK(code_of([] { graud::graph_family_from_name("torus"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("feature generation centers on 2 and rejects K >= M") {
  auto X = graud::generate_features(200, 2, 11);
  CHECK(X.rows() == 200);
  CHECK(X.cols() == 2);
  CHECK(X.mean() == doctest::Approx(2.0).epsilon(0.05));
  CHECK(code_of([] { graud::generate_features(3, 3, 11); }) == ErrorCode::FullRowRank);
  CHECK(code_of([] { graud::generate_features(3, 0, 11); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("probability fields respect clips and the smoothness cap") {
  auto g = graud::make_family_graph(GraphFamily::Path, 10);
  long attempts = 0;
  auto p = graud::generate_probs(g, 0.7, 0.1, 0.05, 0.95, 0.02, 5, 10000, &attempts);
  CHECK(attempts >= 1);
  CHECK((p.array() >= 0.05).all());
  CHECK((p.array() <= 0.95).all());
  CHECK(graud::laplacian_quadratic(g, p) <= 0.02);

  // same seed gives the same field
  auto p2 = graud::generate_probs(g, 0.7, 0.1, 0.05, 0.95, 0.02, 5, 10000);
  CHECK((p - p2).cwiseAbs().maxCoeff() == 0.0);

  // an unreachable cap exhausts the attempt budget
  CHECK(code_of([&] { graud::generate_probs(g, 0.7, 0.1, 0.05, 0.95, 1e-12, 5, 50); }) ==
        ErrorCode::SmoothnessUnreachable);

  CHECK(code_of([&] { graud::generate_probs(g, 0.7, 0.1, 0.0, 0.95, 0.02, 5); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("binomial sampling handles degenerate probabilities and bad input") {
  Eigen::VectorXd n(4), p(4);
  n << 10, 20, 30, 1000;
  p << 0.0, 1.0, 0.5, 0.3;
  auto y = graud::sample_binomial_vector(n, p, 17);
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 20.0);
  CHECK(y[2] >= 0.0);
  CHECK(y[2] <= 30.0);
  CHECK(y[2] == std::floor(y[2]));

  auto y2 = graud::sample_binomial_vector(n, p, 17);
  CHECK((y - y2).cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXd bad_p = p;
  bad_p[0] = 1.5;
  CHECK(code_of([&] { graud::sample_binomial_vector(n, bad_p, 17); }) ==
        ErrorCode::InvalidProbability);

  Eigen::VectorXd zero_n = n;
  zero_n[0] = 0;
  CHECK(code_of([&] { graud::sample_binomial_vector(zero_n, p, 17); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("scenarios are reproducible and internally consistent") {
  GeneratorSettings settings;
  auto a = graud::make_scenario(12, 3, settings, 404);
  auto b = graud::make_scenario(12, 3, settings, 404);
  CHECK((a.X - b.X).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.n0 - b.n0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.p0 - b.p0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.y - b.y).cwiseAbs().maxCoeff() == 0.0);

  auto c = graud::make_scenario(12, 3, settings, 405);
  CHECK((a.y - c.y).cwiseAbs().maxCoeff() > 0.0);

  CHECK(a.graph.node_count == 12);
  CHECK(a.beta0.size() == 3);
  CHECK((a.beta0.array() == 1.0).all());
  CHECK((a.n0.array() >= 1.0).all());
  CHECK((a.y.array() >= 0.0).all());
  CHECK((a.y.array() <= a.n0.array()).all());
  for (int i = 0; i < 12; ++i) CHECK(a.n0[i] == std::round(a.n0[i]));
  CHECK(a.p0_quad_l <= settings.smoothness_cap);
  CHECK(a.p0_quad_l == doctest::Approx(graud::laplacian_quadratic(a.graph, a.p0)));
  CHECK(a.prob_attempts >= 1);
  CHECK(a.seed == 404);

  // the log-count field lies in the feature span up to rounding
  CHECK(a.u0_quad_h < 0.1);
}

TEST_CASE("minimum count pinning moves the feature offset, not the residual") {
  for (long k : {1L, 5L, 20L}) {
    GeneratorSettings settings;
    settings.min_count = k;
    auto sc = graud::make_scenario(10, 3, settings, 2024);
    CHECK(sc.n0.minCoeff() == static_cast<double>(k));
    // residual energy of log n0 against the features stays at rounding level
    CHECK(sc.u0_quad_h < 0.2);
  }
}

TEST_CASE("count noise perturbs the count field only") {
  GeneratorSettings quiet;
  GeneratorSettings noisy;
  noisy.sigma_n = 0.4;
  auto a = graud::make_scenario(10, 3, quiet, 31);
  auto b = graud::make_scenario(10, 3, noisy, 31);
  CHECK((a.X - b.X).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.p0 - b.p0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.n0 - b.n0).cwiseAbs().maxCoeff() > 0.0);
}
