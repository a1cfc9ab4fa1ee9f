#include <doctest.h>

#include <Eigen/Dense>
#include <functional>

#include "core/design.hpp"
#include "core/graph.hpp"

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

TEST_CASE("projector annihilates the column space and nothing orthogonal to it") {
  Eigen::MatrixXd X(2, 1);
  X << 1, 1;
  auto basis = graud::projection_matrix(X);
  CHECK(basis.column_rank == 1);
  Eigen::MatrixXd want(2, 2);
  want << 0.5, -0.5, -0.5, 0.5;
  CHECK((basis.projector - want).cwiseAbs().maxCoeff() < 1e-14);

  // symmetric idempotent with trace M - rank
  const auto& H = basis.projector;
  CHECK((H - H.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((H * H - H).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(H.trace() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("projector rejects rank-deficient and overcomplete feature matrices") {
  Eigen::MatrixXd dup(4, 2);
  dup << 1, 2, 2, 4, 3, 6, 4, 8;  // second column is twice the first
  CHECK(code_of([&] { graud::projection_matrix(dup); }) == ErrorCode::RankDeficientColumns);

  Eigen::MatrixXd wide(2, 2);
  wide << 1, 0, 0, 1;  // K >= M leaves no residual space
  CHECK(code_of([&] { graud::projection_matrix(wide); }) == ErrorCode::FullRowRank);
}

TEST_CASE("delta1 on the frozen 3-path reference instance") {
  auto g = graud::build_graph(3, {{0, 1}, {1, 2}});
  Eigen::MatrixXd X(3, 1);
  X << 1, 2, 3;
  auto basis = graud::projection_matrix(X);
  double d1 = graud::delta1(graud::laplacian(g), basis.projector);
  CHECK(d1 == doctest::Approx(0.27235987264545525).epsilon(1e-12));
}

TEST_CASE("delta1 is zero, not an error, when the null spaces intersect") {
  // X = ones makes null(H) contain ones, which is also null(L): assumption 2 fails
  auto g = graud::build_graph(3, {{0, 1}, {1, 2}});
  Eigen::MatrixXd X = Eigen::MatrixXd::Ones(3, 1);
  auto basis = graud::projection_matrix(X);
  double d1 = graud::delta1(graud::laplacian(g), basis.projector);
  CHECK(d1 >= 0.0);
  CHECK(d1 < 1e-7);
}

TEST_CASE("assumption report flags the degenerate and healthy cases") {
  auto g = graud::build_graph(3, {{0, 1}, {1, 2}});

  Eigen::MatrixXd healthy(3, 1);
  healthy << 1, 2, 3;
  auto rep = graud::check_assumptions(g, graud::projection_matrix(healthy));
  CHECK(rep.connected);
  CHECK_FALSE(rep.ones_in_null_h);
  CHECK(rep.assumption2_holds);
  CHECK(rep.delta1 == doctest::Approx(0.27235987264545525).epsilon(1e-12));
  CHECK(rep.lambda_min_l == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.lambda_min_h == doctest::Approx(1.0).epsilon(1e-12));

  auto bad = graud::check_assumptions(g, graud::projection_matrix(Eigen::MatrixXd::Ones(3, 1)));
  CHECK(bad.connected);
  CHECK(bad.ones_in_null_h);
  CHECK_FALSE(bad.assumption2_holds);

  // disconnected graph: a non-constant component indicator can hide in both null spaces
  auto split = graud::build_graph(4, {{0, 1}, {2, 3}});
  Eigen::MatrixXd ind(4, 1);
  ind << 1, 1, 5, 5;  // spans the component indicator directions
  auto rep2 = graud::check_assumptions(split, graud::projection_matrix(ind));
  CHECK_FALSE(rep2.connected);
  CHECK_FALSE(rep2.assumption2_holds);
}
