#include "solver.hpp"

#include <cmath>

#include "graph.hpp"

namespace graud {

namespace {

void require_same_size(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                       const ProblemInstance& inst) {
  if (u.size() != inst.y_log.size() || v.size() != inst.y_log.size())
    fail(ErrorCode::DimensionMismatch, "iterate length does not match instance order");
}

Eigen::VectorXd weights_or_ones(const ProblemInstance& inst) {
  if (inst.fidelity_weight.size() == 0)
    return Eigen::VectorXd::Ones(inst.y_log.size());
  return inst.fidelity_weight;
}

}  // namespace

ProblemInstance make_problem(const Eigen::VectorXd& y_log, const Eigen::MatrixXd& L,
                             const Eigen::MatrixXd& H, double lambda1, double lambda2) {
  const auto M = y_log.size();
  if (L.rows() != M || L.cols() != M || H.rows() != M || H.cols() != M)
    fail(ErrorCode::DimensionMismatch, "matrix orders do not match y length");
  if (lambda1 < 0.0 || lambda2 < 0.0)
    fail(ErrorCode::InvalidArgument, "regularization weights must be nonnegative");
  if (!y_log.allFinite()) fail(ErrorCode::InvalidArgument, "y_log has non-finite entries");
  require_symmetric(L, "L");
  require_symmetric(H, "H");
  ProblemInstance inst;
  inst.y_log = y_log;
  inst.L = L;
  inst.H = H;
  inst.lambda1 = lambda1;
  inst.lambda2 = lambda2;
  return inst;
}

Eigen::VectorXd log_counts(const Eigen::VectorXd& y, double pseudocount) {
  Eigen::VectorXd out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] < 0.0) fail(ErrorCode::InvalidArgument, "negative count at node " + std::to_string(i));
    if (pseudocount <= 0.0) {
      if (y[i] < 1.0)
        fail(ErrorCode::NonPositiveCount, "count " + std::to_string(y[i]) + " at node " +
                                              std::to_string(i) +
                                              " has no logarithm; enable a pseudocount");
      out[i] = std::log(y[i]);
    } else {
      out[i] = std::log(y[i] + pseudocount);
    }
  }
  return out;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> default_init(const Eigen::VectorXd& y) {
  Eigen::VectorXd u = log_counts(y, 0.0);
  return {u, Eigen::VectorXd::Zero(y.size())};
}

double loss(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const ProblemInstance& inst) {
  require_same_size(u, v, inst);
  Eigen::VectorXd r = inst.y_log - u - v;
  double fid = inst.fidelity_weight.size() > 0 ? inst.fidelity_weight.cwiseProduct(r).dot(r)
                                               : r.squaredNorm();
  return fid + inst.lambda1 * v.dot(inst.L * v) + inst.lambda2 * u.dot(inst.H * u);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gradients(const Eigen::VectorXd& u,
                                                      const Eigen::VectorXd& v,
                                                      const ProblemInstance& inst) {
  require_same_size(u, v, inst);
  Eigen::VectorXd r = u + v - inst.y_log;
  if (inst.fidelity_weight.size() > 0) r = inst.fidelity_weight.cwiseProduct(r).eval();
  Eigen::VectorXd gu = 2.0 * (r + inst.lambda2 * (inst.H * u));
  Eigen::VectorXd gv = 2.0 * (r + inst.lambda1 * (inst.L * v));
  return {gu, gv};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> project_feasible(const Eigen::VectorXd& u,
                                                             const Eigen::VectorXd& v,
                                                             const Eigen::VectorXd& y_log) {
  if (u.size() != y_log.size() || v.size() != y_log.size())
    fail(ErrorCode::DimensionMismatch, "iterate length does not match y length");
  return {u.cwiseMax(y_log), v.cwiseMin(0.0)};
}

double hessian_quadratic_form(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                              const ProblemInstance& inst) {
  require_same_size(u, v, inst);
  return (u + v).squaredNorm() + inst.lambda2 * u.dot(inst.H * u) +
         inst.lambda1 * v.dot(inst.L * v);
}

double recommended_step_size(const ProblemInstance& inst) {
  double lmax_h = inst.H.rows() > 0 ? largest_eigenvalue(inst.H) : 0.0;
  double lmax_l = inst.L.rows() > 0 ? largest_eigenvalue(inst.L) : 0.0;
  return 2.0 / (2.0 + inst.lambda2 * lmax_h + inst.lambda1 * lmax_l);
}

Solution solve(const ProblemInstance& inst, const SolverConfig& cfg,
               std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> init) {
  if (cfg.inner_iters < 1 || cfg.outer_iters < 1)
    fail(ErrorCode::InvalidArgument, "iteration counts must be positive");
  if (cfg.stop_threshold < 0.0)
    fail(ErrorCode::InvalidArgument, "stop threshold must be nonnegative");
  const auto M = inst.y_log.size();

  Eigen::VectorXd u, v;
  if (init) {
    u = init->first;
    v = init->second;
    if (u.size() != M || v.size() != M)
      fail(ErrorCode::DimensionMismatch, "initial iterate length does not match instance");
  } else {
    u = inst.y_log;  // n1 = y, p1 = 1
    v = Eigen::VectorXd::Zero(M);
  }

  double eta = cfg.step_size > 0.0 ? cfg.step_size : 0.9 * recommended_step_size(inst);
  Eigen::VectorXd w = weights_or_ones(inst);
  bool masked = inst.fidelity_weight.size() > 0;

  Solution sol;
  sol.step_size = eta;
  double cur = loss(u, v, inst);
  sol.loss_trace.push_back(cur);
  const double diverge_at = 1e6 * cur + 1e-6;

  Eigen::VectorXd du(M), dv(M);
  int rounds = 0;
  for (int t = 0; t < cfg.outer_iters; ++t) {
    // descend in u with v fixed
    for (int s = 0; s < cfg.inner_iters; ++s) {
      du = w.cwiseProduct(u + v - inst.y_log) + inst.lambda2 * (inst.H * u);
      u -= eta * du;
    }
    if (cfg.project_feasible) {
      if (masked) {
        for (Eigen::Index i = 0; i < M; ++i)
          if (w[i] > 0.0 && u[i] < inst.y_log[i]) u[i] = inst.y_log[i];
      } else {
        u = u.cwiseMax(inst.y_log);
      }
    }
    // descend in v with u fixed
    for (int s = 0; s < cfg.inner_iters; ++s) {
      dv = w.cwiseProduct(u + v - inst.y_log) + inst.lambda1 * (inst.L * v);
      v -= eta * dv;
    }
    if (cfg.project_feasible) v = v.cwiseMin(0.0);

    ++rounds;
    if (!u.allFinite() || !v.allFinite())
      fail(ErrorCode::NonFiniteIterate, "iterate became non-finite at round " + std::to_string(rounds));
    double prev = cur;
    cur = loss(u, v, inst);
    sol.loss_trace.push_back(cur);
    if (!std::isfinite(cur))
      fail(ErrorCode::NonFiniteIterate, "loss became non-finite at round " + std::to_string(rounds));
    if (cur > diverge_at)
      fail(ErrorCode::DivergedLoss, "loss grew past 1e6x its initial value; reduce the step size");
    if (prev - cur < cfg.stop_threshold) {
      sol.converged = true;
      break;
    }
  }
  sol.iterations_used = rounds;
  sol.u = u;
  sol.v = v;
  sol.n_hat = u.array().exp();
  sol.p_hat = v.array().exp();
  return sol;
}

}  // namespace graud
