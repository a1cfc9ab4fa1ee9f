#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <functional>

#include "core/graph.hpp"

using graud::build_graph;
using graud::ErrorCode;

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

TEST_CASE("graph construction canonicalizes and validates") {
  auto g = build_graph(4, {{2, 1}, {1, 2}, {0, 3}});
  CHECK(g.node_count == 4);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0] == std::pair<int, int>{0, 3});
  CHECK(g.edges[1] == std::pair<int, int>{1, 2});

  CHECK(code_of([] { build_graph(0, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { build_graph(3, {{1, 1}}); }) == ErrorCode::SelfLoop);
  CHECK(code_of([] { build_graph(3, {{0, 3}}); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { build_graph(3, {{-1, 0}}); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("laplacian of a path matches the stencil") {
  auto g = build_graph(3, {{0, 1}, {1, 2}});
  Eigen::MatrixXd L = graud::laplacian(g);
  Eigen::MatrixXd want(3, 3);
  want << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK((L - want).cwiseAbs().maxCoeff() == 0.0);

  // spectrum of the 3-path laplacian is {0, 1, 3}
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
  CHECK(std::abs(es.eigenvalues()[0]) < 1e-12);
  CHECK(es.eigenvalues()[1] == doctest::Approx(1.0));
  CHECK(es.eigenvalues()[2] == doctest::Approx(3.0));
}

TEST_CASE("laplacian quadratic form equals the matrix form, each edge once") {
  auto g = build_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  Eigen::MatrixXd L = graud::laplacian(g);
  Eigen::VectorXd x(5);
  x << 0.3, -1.2, 2.0, 0.0, 0.7;
  double via_edges = graud::laplacian_quadratic(g, x);
  double via_matrix = x.dot(L * x);
  CHECK(via_edges == doctest::Approx(via_matrix).epsilon(1e-14));

  // constants are invisible to L
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(5);
  CHECK(graud::laplacian_quadratic(g, ones) == 0.0);

  Eigen::VectorXd wrong(4);
  wrong.setZero();
  CHECK(code_of([&] { graud::laplacian_quadratic(g, wrong); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("connectivity and component labels") {
  auto path = build_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(graud::is_connected(path));

  auto split = build_graph(5, {{0, 1}, {3, 4}});
  CHECK_FALSE(graud::is_connected(split));
  auto labels = graud::connected_components(split);
  REQUIRE(labels.size() == 5);
  CHECK(labels[0] == labels[1]);
  CHECK(labels[3] == labels[4]);
  CHECK(labels[0] != labels[2]);
  CHECK(labels[2] != labels[3]);
  CHECK(*std::max_element(labels.begin(), labels.end()) == 2);

  auto singleton = build_graph(1, {});
  CHECK(graud::is_connected(singleton));
}

TEST_CASE("smallest nonzero eigenvalue skips the null space") {
  auto g = build_graph(3, {{0, 1}, {1, 2}});
  Eigen::MatrixXd L = graud::laplacian(g);
  CHECK(graud::smallest_nonzero_eigenvalue(L) == doctest::Approx(1.0).epsilon(1e-12));

  // single edge on two nodes: spectrum {0, 2}
  auto e = build_graph(2, {{0, 1}});
  CHECK(graud::smallest_nonzero_eigenvalue(graud::laplacian(e)) ==
        doctest::Approx(2.0).epsilon(1e-12));

  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  CHECK(code_of([&] { graud::smallest_nonzero_eigenvalue(zero); }) ==
        ErrorCode::AllZeroSpectrum);

  Eigen::MatrixXd indef(2, 2);
  indef << 1, 0, 0, -1;
  CHECK(code_of([&] { graud::smallest_nonzero_eigenvalue(indef); }) == ErrorCode::NotPsd);
}

TEST_CASE("largest eigenvalue and symmetry guard") {
  auto g = build_graph(3, {{0, 1}, {1, 2}});
  CHECK(graud::largest_eigenvalue(graud::laplacian(g)) == doctest::Approx(3.0).epsilon(1e-12));

  Eigen::MatrixXd asym(2, 2);
  asym << 1, 2, 0, 1;
  CHECK(code_of([&] { graud::require_symmetric(asym, "m"); }) == ErrorCode::InvalidArgument);
}
