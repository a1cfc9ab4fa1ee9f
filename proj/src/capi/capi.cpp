#include "graud/graud.h"

#include <cstring>
#include <new>
#include <string>

#include "../core/analysis.hpp"
#include "../core/design.hpp"
#include "../core/experiments.hpp"
#include "../core/graph.hpp"
#include "../core/io.hpp"
#include "../core/solver.hpp"
#include "../core/synth.hpp"

using graud::ErrorCode;

struct graud_graph {
  graud::Graph g;
};
struct graud_design {
  graud::DesignBasis basis;
};
struct graud_problem {
  graud::ProblemInstance inst;
};
struct graud_solution {
  graud::Solution sol;
};
struct graud_scenario {
  graud::Scenario sc;
};
struct graud_instance {
  graud::LoadedInstance li;
};

namespace {

thread_local std::string g_last_error;

graud_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return GRAUD_OK;
    case ErrorCode::InvalidArgument: return GRAUD_ERR_INVALID_ARGUMENT;
    case ErrorCode::IndexOutOfRange: return GRAUD_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::SelfLoop: return GRAUD_ERR_SELF_LOOP;
    case ErrorCode::DimensionMismatch: return GRAUD_ERR_DIMENSION_MISMATCH;
    case ErrorCode::Parse: return GRAUD_ERR_PARSE;
    case ErrorCode::Io: return GRAUD_ERR_IO;
    case ErrorCode::MissingNode: return GRAUD_ERR_MISSING_NODE;
    case ErrorCode::DuplicateNode: return GRAUD_ERR_DUPLICATE_NODE;
    case ErrorCode::RankDeficientColumns: return GRAUD_ERR_RANK_DEFICIENT_COLUMNS;
    case ErrorCode::FullRowRank: return GRAUD_ERR_FULL_ROW_RANK;
    case ErrorCode::NotPsd: return GRAUD_ERR_NOT_PSD;
    case ErrorCode::AllZeroSpectrum: return GRAUD_ERR_ALL_ZERO_SPECTRUM;
    case ErrorCode::AssumptionViolated: return GRAUD_ERR_ASSUMPTION_VIOLATED;
    case ErrorCode::NonPositiveCount: return GRAUD_ERR_NON_POSITIVE_COUNT;
    case ErrorCode::DivergedLoss: return GRAUD_ERR_DIVERGED_LOSS;
    case ErrorCode::NonFiniteIterate: return GRAUD_ERR_NON_FINITE_ITERATE;
    case ErrorCode::InvalidProbability: return GRAUD_ERR_INVALID_PROBABILITY;
    case ErrorCode::InvalidDelta: return GRAUD_ERR_INVALID_DELTA;
    case ErrorCode::InvalidEps: return GRAUD_ERR_INVALID_EPS;
    case ErrorCode::SmoothnessUnreachable: return GRAUD_ERR_SMOOTHNESS_UNREACHABLE;
    case ErrorCode::FoldTooSmall: return GRAUD_ERR_FOLD_TOO_SMALL;
    case ErrorCode::ZeroTruthNorm: return GRAUD_ERR_ZERO_TRUTH_NORM;
    case ErrorCode::UnknownExperiment: return GRAUD_ERR_UNKNOWN_EXPERIMENT;
    case ErrorCode::Internal: return GRAUD_ERR_INTERNAL;
  }
  return GRAUD_ERR_INTERNAL;
}

template <typename Fn>
graud_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GRAUD_OK;
  } catch (const graud::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GRAUD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GRAUD_ERR_INTERNAL;
  }
}

graud_status invalid(const char* message) {
  g_last_error = message;
  return GRAUD_ERR_INVALID_ARGUMENT;
}

Eigen::Map<const Eigen::VectorXd> as_vec(const double* x, int n) {
  return Eigen::Map<const Eigen::VectorXd>(x, n);
}

Eigen::MatrixXd from_row_major(const double* x, int rows, int cols) {
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      x, rows, cols);
}

void to_row_major(const Eigen::MatrixXd& m, double* out) {
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      out, m.rows(), m.cols()) = m;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

graud::SolverConfig to_core(const graud_solver_config* cfg) {
  graud::SolverConfig out;
  if (cfg) {
    out.inner_iters = static_cast<int>(cfg->inner_iters);
    out.outer_iters = static_cast<int>(cfg->outer_iters);
    out.step_size = cfg->step_size;
    out.stop_threshold = cfg->stop_threshold;
    out.project_feasible = cfg->project_feasible != 0;
  }
  return out;
}

graud::GraphFamily to_family(int family) {
  switch (family) {
    case GRAUD_FAMILY_PATH: return graud::GraphFamily::Path;
    case GRAUD_FAMILY_CYCLE: return graud::GraphFamily::Cycle;
    case GRAUD_FAMILY_STAR: return graud::GraphFamily::Star;
    case GRAUD_FAMILY_GRID: return graud::GraphFamily::Grid;
    default: graud::fail(ErrorCode::InvalidArgument, "unknown graph family id");
  }
}

int from_family(graud::GraphFamily family) {
  switch (family) {
    case graud::GraphFamily::Path: return GRAUD_FAMILY_PATH;
    case graud::GraphFamily::Cycle: return GRAUD_FAMILY_CYCLE;
    case graud::GraphFamily::Star: return GRAUD_FAMILY_STAR;
    case graud::GraphFamily::Grid: return GRAUD_FAMILY_GRID;
  }
  return GRAUD_FAMILY_PATH;
}

graud::GeneratorSettings to_settings(const graud_scenario_params* p) {
  graud::GeneratorSettings s;
  s.p_mean = p->p_mean;
  s.p_sd = p->p_sd;
  s.clip_lo = p->clip_lo;
  s.clip_hi = p->clip_hi;
  s.smoothness_cap = p->smoothness_cap;
  s.min_count = p->min_count;
  s.sigma_n = p->sigma_n;
  s.family = to_family(p->family);
  s.max_attempts = p->max_attempts;
  return s;
}

}  // namespace

extern "C" {

const char* graud_version(void) { return "1.0.0"; }

const char* graud_status_name(graud_status status) {
  switch (status) {
    case GRAUD_OK: return "ok";
    case GRAUD_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case GRAUD_ERR_INDEX_OUT_OF_RANGE: return "index_out_of_range";
    case GRAUD_ERR_SELF_LOOP: return "self_loop";
    case GRAUD_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case GRAUD_ERR_PARSE: return "parse_error";
    case GRAUD_ERR_IO: return "io_error";
    case GRAUD_ERR_MISSING_NODE: return "missing_node";
    case GRAUD_ERR_DUPLICATE_NODE: return "duplicate_node";
    case GRAUD_ERR_RANK_DEFICIENT_COLUMNS: return "rank_deficient_columns";
    case GRAUD_ERR_FULL_ROW_RANK: return "full_row_rank";
    case GRAUD_ERR_NOT_PSD: return "not_psd";
    case GRAUD_ERR_ALL_ZERO_SPECTRUM: return "all_zero_spectrum";
    case GRAUD_ERR_ASSUMPTION_VIOLATED: return "assumption_violated";
    case GRAUD_ERR_NON_POSITIVE_COUNT: return "non_positive_count";
    case GRAUD_ERR_DIVERGED_LOSS: return "diverged_loss";
    case GRAUD_ERR_NON_FINITE_ITERATE: return "non_finite_iterate";
    case GRAUD_ERR_INVALID_PROBABILITY: return "invalid_probability";
    case GRAUD_ERR_INVALID_DELTA: return "invalid_delta";
    case GRAUD_ERR_INVALID_EPS: return "invalid_eps";
    case GRAUD_ERR_SMOOTHNESS_UNREACHABLE: return "smoothness_unreachable";
    case GRAUD_ERR_FOLD_TOO_SMALL: return "fold_too_small";
    case GRAUD_ERR_ZERO_TRUTH_NORM: return "zero_truth_norm";
    case GRAUD_ERR_UNKNOWN_EXPERIMENT: return "unknown_experiment";
    case GRAUD_ERR_INTERNAL: return "internal_error";
  }
  return "internal_error";
}

const char* graud_last_error_message(void) { return g_last_error.c_str(); }

void graud_string_free(char* s) { delete[] s; }

/* ---------- graphs ---------- */

graud_status graud_graph_create(int node_count, const int* edge_i, const int* edge_j,
                                long edge_count, graud_graph** out) {
  if (!out || (edge_count > 0 && (!edge_i || !edge_j))) return invalid("null pointer argument");
  return guarded([&] {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(edge_count));
    for (long e = 0; e < edge_count; ++e) edges.push_back({edge_i[e], edge_j[e]});
    *out = new graud_graph{graud::build_graph(node_count, edges)};
  });
}

graud_status graud_graph_from_edge_file(const char* path, int node_count_override,
                                        graud_graph** out) {
  if (!out || !path) return invalid("null pointer argument");
  return guarded([&] {
    graud::EdgeListFile ef = graud::read_edge_list(path);
    int M = node_count_override > 0 ? node_count_override : ef.declared_nodes;
    if (M <= 0)
      graud::fail(ErrorCode::Parse,
                  std::string(path) + ": no 'nodes M' header and no node count override");
    *out = new graud_graph{graud::build_graph(M, ef.edges)};
  });
}

void graud_graph_destroy(graud_graph* g) { delete g; }

int graud_graph_node_count(const graud_graph* g) { return g ? g->g.node_count : 0; }

long graud_graph_edge_count(const graud_graph* g) {
  return g ? static_cast<long>(g->g.edges.size()) : 0;
}

int graud_graph_is_connected(const graud_graph* g) {
  return g && graud::is_connected(g->g) ? 1 : 0;
}

graud_status graud_graph_laplacian(const graud_graph* g, double* out) {
  if (!g || !out) return invalid("null pointer argument");
  return guarded([&] { to_row_major(graud::laplacian(g->g), out); });
}

graud_status graud_graph_laplacian_quadratic(const graud_graph* g, const double* x, double* out) {
  if (!g || !x || !out) return invalid("null pointer argument");
  return guarded([&] { *out = graud::laplacian_quadratic(g->g, as_vec(x, g->g.node_count)); });
}

graud_status graud_smallest_nonzero_eigenvalue(const double* matrix, int order, double zero_tol,
                                               double* out) {
  if (!matrix || !out) return invalid("null pointer argument");
  if (order < 1) return invalid("order must be positive");
  return guarded([&] {
    *out = graud::smallest_nonzero_eigenvalue(from_row_major(matrix, order, order),
                                              zero_tol > 0.0 ? zero_tol : 1e-8);
  });
}

/* ---------- feature designs ---------- */

graud_status graud_design_create(const double* features, int rows, int cols, graud_design** out) {
  if (!features || !out) return invalid("null pointer argument");
  if (rows < 1 || cols < 1) return invalid("feature matrix must be nonempty");
  return guarded(
      [&] { *out = new graud_design{graud::projection_matrix(from_row_major(features, rows, cols))}; });
}

graud_status graud_design_from_csv(const char* path, graud_design** out) {
  if (!path || !out) return invalid("null pointer argument");
  return guarded(
      [&] { *out = new graud_design{graud::projection_matrix(graud::read_features_csv(path))}; });
}

void graud_design_destroy(graud_design* d) { delete d; }

int graud_design_rows(const graud_design* d) {
  return d ? static_cast<int>(d->basis.features.rows()) : 0;
}

int graud_design_cols(const graud_design* d) {
  return d ? static_cast<int>(d->basis.features.cols()) : 0;
}

int graud_design_rank(const graud_design* d) { return d ? d->basis.column_rank : 0; }

graud_status graud_design_projector(const graud_design* d, double* out) {
  if (!d || !out) return invalid("null pointer argument");
  return guarded([&] { to_row_major(d->basis.projector, out); });
}

graud_status graud_instance_load(const char* edges_path, const char* counts_path,
                                 const char* features_path, int node_count_override,
                                 int standardize, graud_instance** out) {
  if (!edges_path || !counts_path || !features_path || !out)
    return invalid("null pointer argument");
  return guarded([&] {
    *out = new graud_instance{graud::load_instance(edges_path, counts_path, features_path,
                                                   node_count_override, standardize != 0)};
  });
}

void graud_instance_destroy(graud_instance* li) { delete li; }

int graud_instance_size(const graud_instance* li) { return li ? li->li.graph.node_count : 0; }

graud_status graud_instance_counts(const graud_instance* li, double* out) {
  if (!li || !out) return invalid("null pointer argument");
  Eigen::Map<Eigen::VectorXd>(out, li->li.y.size()) = li->li.y;
  g_last_error.clear();
  return GRAUD_OK;
}

graud_status graud_instance_graph(const graud_instance* li, graud_graph** out) {
  if (!li || !out) return invalid("null pointer argument");
  return guarded([&] { *out = new graud_graph{li->li.graph}; });
}

graud_status graud_instance_design(const graud_instance* li, graud_design** out) {
  if (!li || !out) return invalid("null pointer argument");
  return guarded([&] { *out = new graud_design{graud::projection_matrix(li->li.X)}; });
}

graud_status graud_check_assumptions(const graud_graph* g, const graud_design* d,
                                     graud_assumption_report* out) {
  if (!g || !d || !out) return invalid("null pointer argument");
  return guarded([&] {
    graud::AssumptionReport rep = graud::check_assumptions(g->g, d->basis);
    out->connected = rep.connected ? 1 : 0;
    out->ones_in_null_h = rep.ones_in_null_h ? 1 : 0;
    out->assumption2_holds = rep.assumption2_holds ? 1 : 0;
    out->delta1 = rep.delta1;
    out->lambda_min_l = rep.lambda_min_l;
    out->lambda_min_h = rep.lambda_min_h;
  });
}

graud_status graud_delta1(const double* L, const double* H, int order, double* out) {
  if (!L || !H || !out) return invalid("null pointer argument");
  if (order < 1) return invalid("order must be positive");
  return guarded(
      [&] { *out = graud::delta1(from_row_major(L, order, order), from_row_major(H, order, order)); });
}

/* ---------- estimation problems ---------- */

graud_status graud_log_counts(const double* y, int length, double pseudocount, double* out) {
  if (!y || !out) return invalid("null pointer argument");
  if (length < 1) return invalid("length must be positive");
  return guarded([&] {
    Eigen::VectorXd r = graud::log_counts(as_vec(y, length), pseudocount);
    Eigen::Map<Eigen::VectorXd>(out, length) = r;
  });
}

graud_status graud_problem_create(const graud_graph* g, const graud_design* d, const double* y_log,
                                  double lambda1, double lambda2, graud_problem** out) {
  if (!g || !d || !y_log || !out) return invalid("null pointer argument");
  return guarded([&] {
    int M = g->g.node_count;
    if (d->basis.projector.rows() != M)
      graud::fail(ErrorCode::DimensionMismatch, "design order does not match graph order");
    *out = new graud_problem{graud::make_problem(as_vec(y_log, M), graud::laplacian(g->g),
                                                 d->basis.projector, lambda1, lambda2)};
  });
}

void graud_problem_destroy(graud_problem* p) { delete p; }

int graud_problem_size(const graud_problem* p) {
  return p ? static_cast<int>(p->inst.y_log.size()) : 0;
}

graud_status graud_loss(const graud_problem* p, const double* u, const double* v, double* out) {
  if (!p || !u || !v || !out) return invalid("null pointer argument");
  const int M = static_cast<int>(p->inst.y_log.size());
  return guarded([&] { *out = graud::loss(as_vec(u, M), as_vec(v, M), p->inst); });
}

graud_status graud_gradients(const graud_problem* p, const double* u, const double* v,
                             double* grad_u, double* grad_v) {
  if (!p || !u || !v || !grad_u || !grad_v) return invalid("null pointer argument");
  const int M = static_cast<int>(p->inst.y_log.size());
  return guarded([&] {
    auto [gu, gv] = graud::gradients(as_vec(u, M), as_vec(v, M), p->inst);
    Eigen::Map<Eigen::VectorXd>(grad_u, M) = gu;
    Eigen::Map<Eigen::VectorXd>(grad_v, M) = gv;
  });
}

graud_status graud_hessian_quadratic_form(const graud_problem* p, const double* u, const double* v,
                                          double* out) {
  if (!p || !u || !v || !out) return invalid("null pointer argument");
  const int M = static_cast<int>(p->inst.y_log.size());
  return guarded([&] { *out = graud::hessian_quadratic_form(as_vec(u, M), as_vec(v, M), p->inst); });
}

graud_status graud_recommended_step_size(const graud_problem* p, double* out) {
  if (!p || !out) return invalid("null pointer argument");
  return guarded([&] { *out = graud::recommended_step_size(p->inst); });
}

void graud_solver_config_default(graud_solver_config* cfg) {
  if (!cfg) return;
  graud::SolverConfig d;
  cfg->inner_iters = d.inner_iters;
  cfg->outer_iters = d.outer_iters;
  cfg->step_size = d.step_size;
  cfg->stop_threshold = d.stop_threshold;
  cfg->project_feasible = d.project_feasible ? 1 : 0;
}

graud_status graud_solve(const graud_problem* p, const graud_solver_config* cfg,
                         const double* init_u, const double* init_v, graud_solution** out) {
  if (!p || !out) return invalid("null pointer argument");
  if ((init_u == nullptr) != (init_v == nullptr))
    return invalid("init_u and init_v must be given together");
  const int M = static_cast<int>(p->inst.y_log.size());
  return guarded([&] {
    std::optional<std::pair<Eigen::VectorXd, Eigen::VectorXd>> init;
    if (init_u) init = std::make_pair(as_vec(init_u, M).eval(), as_vec(init_v, M).eval());
    *out = new graud_solution{graud::solve(p->inst, to_core(cfg), init)};
  });
}

void graud_solution_destroy(graud_solution* s) { delete s; }

int graud_solution_size(const graud_solution* s) {
  return s ? static_cast<int>(s->sol.u.size()) : 0;
}

graud_status graud_solution_get(const graud_solution* s, double* u, double* v, double* n_hat,
                                double* p_hat) {
  if (!s) return invalid("null pointer argument");
  const int M = static_cast<int>(s->sol.u.size());
  if (u) Eigen::Map<Eigen::VectorXd>(u, M) = s->sol.u;
  if (v) Eigen::Map<Eigen::VectorXd>(v, M) = s->sol.v;
  if (n_hat) Eigen::Map<Eigen::VectorXd>(n_hat, M) = s->sol.n_hat;
  if (p_hat) Eigen::Map<Eigen::VectorXd>(p_hat, M) = s->sol.p_hat;
  g_last_error.clear();
  return GRAUD_OK;
}

long graud_solution_trace_length(const graud_solution* s) {
  return s ? static_cast<long>(s->sol.loss_trace.size()) : 0;
}

graud_status graud_solution_trace(const graud_solution* s, double* out) {
  if (!s || !out) return invalid("null pointer argument");
  std::memcpy(out, s->sol.loss_trace.data(), s->sol.loss_trace.size() * sizeof(double));
  g_last_error.clear();
  return GRAUD_OK;
}

int graud_solution_converged(const graud_solution* s) { return s && s->sol.converged ? 1 : 0; }

long graud_solution_iterations(const graud_solution* s) {
  return s ? s->sol.iterations_used : 0;
}

double graud_solution_step_size(const graud_solution* s) { return s ? s->sol.step_size : 0.0; }

/* ---------- synthetic scenarios ---------- */

void graud_scenario_params_default(graud_scenario_params* params) {
  if (!params) return;
  graud::GeneratorSettings d;
  params->m = 10;
  params->k = 3;
  params->p_mean = d.p_mean;
  params->p_sd = d.p_sd;
  params->clip_lo = d.clip_lo;
  params->clip_hi = d.clip_hi;
  params->smoothness_cap = d.smoothness_cap;
  params->min_count = d.min_count;
  params->sigma_n = d.sigma_n;
  params->family = from_family(d.family);
  params->max_attempts = d.max_attempts;
}

graud_status graud_scenario_generate(const graud_scenario_params* params, unsigned long long seed,
                                     graud_scenario** out) {
  if (!params || !out) return invalid("null pointer argument");
  return guarded([&] {
    *out = new graud_scenario{
        graud::make_scenario(params->m, params->k, to_settings(params), seed)};
  });
}

graud_status graud_scenario_to_json(const graud_scenario* sc, char** out) {
  if (!sc || !out) return invalid("null pointer argument");
  return guarded([&] { *out = dup_string(graud::scenario_to_json(sc->sc).dump(2) + "\n"); });
}

graud_status graud_scenario_from_json(const char* text, graud_scenario** out) {
  if (!text || !out) return invalid("null pointer argument");
  return guarded([&] {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) graud::fail(ErrorCode::Parse, "scenario document is not valid JSON");
    *out = new graud_scenario{graud::scenario_from_json(j)};
  });
}

void graud_scenario_destroy(graud_scenario* sc) { delete sc; }

int graud_scenario_size(const graud_scenario* sc) { return sc ? sc->sc.graph.node_count : 0; }

int graud_scenario_features(const graud_scenario* sc) {
  return sc ? static_cast<int>(sc->sc.X.cols()) : 0;
}

graud_status graud_scenario_get(const graud_scenario* sc, double* n0, double* p0, double* y,
                                double* X) {
  if (!sc) return invalid("null pointer argument");
  const int M = sc->sc.graph.node_count;
  if (n0) Eigen::Map<Eigen::VectorXd>(n0, M) = sc->sc.n0;
  if (p0) Eigen::Map<Eigen::VectorXd>(p0, M) = sc->sc.p0;
  if (y) Eigen::Map<Eigen::VectorXd>(y, M) = sc->sc.y;
  if (X) to_row_major(sc->sc.X, X);
  g_last_error.clear();
  return GRAUD_OK;
}

graud_status graud_scenario_graph(const graud_scenario* sc, graud_graph** out) {
  if (!sc || !out) return invalid("null pointer argument");
  return guarded([&] { *out = new graud_graph{sc->sc.graph}; });
}

graud_status graud_scenario_design(const graud_scenario* sc, graud_design** out) {
  if (!sc || !out) return invalid("null pointer argument");
  return guarded([&] { *out = new graud_design{graud::projection_matrix(sc->sc.X)}; });
}

/* ---------- diagnostics ---------- */

graud_status graud_relative_l1_error(const double* estimate, const double* truth, int length,
                                     double* out) {
  if (!estimate || !truth || !out) return invalid("null pointer argument");
  if (length < 1) return invalid("length must be positive");
  return guarded(
      [&] { *out = graud::relative_l1_error(as_vec(estimate, length), as_vec(truth, length)); });
}

graud_status graud_recovery_bound_compute(const graud_scenario* sc, const graud_problem* p,
                                          graud_recovery_bound* out) {
  if (!sc || !p || !out) return invalid("null pointer argument");
  return guarded([&] {
    graud::RecoveryBound rb = graud::recovery_bound(sc->sc, p->inst);
    out->eps_y_sq = rb.eps_y_sq;
    out->eps_u = rb.eps_u;
    out->eps_v = rb.eps_v;
    out->c0 = rb.c0;
    out->bound_u = rb.bound_u;
    out->bound_v = rb.bound_v;
    out->delta1 = rb.delta1_value;
  });
}

graud_status graud_chernoff_tail_bounds(long long n, double p, double delta,
                                        graud_tail_bound* out) {
  if (!out) return invalid("null pointer argument");
  return guarded([&] {
    graud::TailBound tb = graud::chernoff_tail_bounds(n, p, delta);
    out->delta = tb.delta;
    out->mu = tb.mu;
    out->upper = tb.upper;
    out->lower = tb.lower;
  });
}

graud_status graud_concentration_check(long long n, double p, double eps, long trials,
                                       unsigned long long seed, graud_concentration_result* out) {
  if (!out) return invalid("null pointer argument");
  return guarded([&] {
    graud::ConcentrationResult r = graud::concentration_check(n, p, eps, trials, seed);
    out->linear_freq = r.linear_freq;
    out->linear_bound = r.linear_bound;
    out->log_freq = r.log_freq;
    out->log_samples = r.log_samples;
  });
}

/* ---------- cross-validation ---------- */

graud_status graud_cross_validate(const graud_graph* g, const graud_design* d, const double* y,
                                  int length, const double* lambda1_grid, int len1,
                                  const double* lambda2_grid, int len2, int folds,
                                  unsigned long long seed, double pseudocount,
                                  const graud_solver_config* cfg, double* best_lambda1,
                                  double* best_lambda2, double* score_table) {
  if (!g || !d || !y || !lambda1_grid || !lambda2_grid || !best_lambda1 || !best_lambda2)
    return invalid("null pointer argument");
  if (len1 < 1 || len2 < 1) return invalid("lambda grids must be nonempty");
  return guarded([&] {
    graud::CvOptions options;
    options.pseudocount = pseudocount;
    options.solver = to_core(cfg);
    graud::CvResult res = graud::cross_validate(
        as_vec(y, length), g->g, d->basis.features,
        std::vector<double>(lambda1_grid, lambda1_grid + len1),
        std::vector<double>(lambda2_grid, lambda2_grid + len2), folds, seed, options);
    *best_lambda1 = res.lambda1;
    *best_lambda2 = res.lambda2;
    if (score_table) {
      size_t at = 0;
      for (const auto& row : res.table) {
        score_table[at++] = row.lambda1;
        score_table[at++] = row.lambda2;
        score_table[at++] = static_cast<double>(row.fold);
        score_table[at++] = row.score;
      }
    }
  });
}

/* ---------- experiment harness ---------- */

void graud_experiment_params_default(const char* name, graud_experiment_params* params) {
  if (!params) return;
  graud::ExperimentParams d = graud::default_experiment_params(name ? name : "");
  params->m = d.m;
  params->k = d.k;
  params->reps = d.reps;
  params->base_seed = d.base_seed;
  params->lambda1 = d.lambda1;
  params->lambda2 = d.lambda2;
  params->pseudocount = d.pseudocount;
  params->family = from_family(d.family);
  params->max_attempts = d.max_attempts;
  params->solver.inner_iters = d.solver.inner_iters;
  params->solver.outer_iters = d.solver.outer_iters;
  params->solver.step_size = d.solver.step_size;
  params->solver.stop_threshold = d.solver.stop_threshold;
  params->solver.project_feasible = d.solver.project_feasible ? 1 : 0;
}

graud_status graud_experiment_run(const char* name, const graud_experiment_params* params,
                                  const char* out_dir, char** summary_json) {
  if (!name || !params || !out_dir) return invalid("null pointer argument");
  return guarded([&] {
    graud::ExperimentParams p;
    p.m = params->m;
    p.k = params->k;
    p.reps = params->reps;
    p.base_seed = params->base_seed;
    p.lambda1 = params->lambda1;
    p.lambda2 = params->lambda2;
    p.pseudocount = params->pseudocount;
    p.family = to_family(params->family);
    p.max_attempts = params->max_attempts;
    p.solver = to_core(&params->solver);
    graud::ExperimentSummary s = graud::run_experiment(name, p, out_dir);
    if (summary_json) {
      nlohmann::json j;
      j["experiment"] = s.name;
      auto vals = nlohmann::json::object();
      for (const auto& [key, value] : s.values) vals[key] = value;
      j["summary"] = vals;
      j["files"] = s.files;
      *summary_json = dup_string(j.dump(2) + "\n");
    }
  });
}

}  // extern "C"
