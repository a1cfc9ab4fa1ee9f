/* GRAUD: graph-regularized debiasing of underreported count data.
 *
 * Estimates true counts n and discovery probabilities p per graph node from
 * observations y ~ Binomial(n, p), by minimizing
 *     || log y - u - v ||^2 + lambda1 v^T L v + lambda2 u^T H u
 * over u = log n, v = log p, subject to u >= log y, v <= 0, where L is the
 * graph Laplacian and H projects out the feature column space.
 *
 * All functions returning graud_status set a thread-local message retrievable
 * via graud_last_error_message() on failure. Handles are opaque; every
 * *_create/_generate result must be released with the matching *_destroy.
 * Matrices cross the boundary as dense row-major double buffers.
 */

#ifndef GRAUD_H
#define GRAUD_H

#include <stddef.h>

#if defined(_WIN32)
#define GRAUD_API __declspec(dllexport)
#else
#define GRAUD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum graud_status {
  GRAUD_OK = 0,
  GRAUD_ERR_INVALID_ARGUMENT = 1,
  GRAUD_ERR_INDEX_OUT_OF_RANGE = 2,
  GRAUD_ERR_SELF_LOOP = 3,
  GRAUD_ERR_DIMENSION_MISMATCH = 4,
  GRAUD_ERR_PARSE = 5,
  GRAUD_ERR_IO = 6,
  GRAUD_ERR_MISSING_NODE = 7,
  GRAUD_ERR_DUPLICATE_NODE = 8,
  GRAUD_ERR_RANK_DEFICIENT_COLUMNS = 9,
  GRAUD_ERR_FULL_ROW_RANK = 10,
  GRAUD_ERR_NOT_PSD = 11,
  GRAUD_ERR_ALL_ZERO_SPECTRUM = 12,
  GRAUD_ERR_ASSUMPTION_VIOLATED = 13,
  GRAUD_ERR_NON_POSITIVE_COUNT = 14,
  GRAUD_ERR_DIVERGED_LOSS = 15,
  GRAUD_ERR_NON_FINITE_ITERATE = 16,
  GRAUD_ERR_INVALID_PROBABILITY = 17,
  GRAUD_ERR_INVALID_DELTA = 18,
  GRAUD_ERR_INVALID_EPS = 19,
  GRAUD_ERR_SMOOTHNESS_UNREACHABLE = 20,
  GRAUD_ERR_FOLD_TOO_SMALL = 21,
  GRAUD_ERR_ZERO_TRUTH_NORM = 22,
  GRAUD_ERR_UNKNOWN_EXPERIMENT = 23,
  GRAUD_ERR_INTERNAL = 24
} graud_status;

GRAUD_API const char* graud_version(void);
GRAUD_API const char* graud_status_name(graud_status status);
/* Message for the most recent failure on this thread; empty string if none. */
GRAUD_API const char* graud_last_error_message(void);
/* Frees strings returned through char** out-parameters. */
GRAUD_API void graud_string_free(char* s);

/* ---------- graphs ---------- */

typedef struct graud_graph graud_graph;

GRAUD_API graud_status graud_graph_create(int node_count, const int* edge_i, const int* edge_j,
                                          long edge_count, graud_graph** out);
/* Edge-list text file: "i j" per line, '#' comments, optional "nodes M" header.
 * node_count_override > 0 beats the header; pass 0 to rely on the header. */
GRAUD_API graud_status graud_graph_from_edge_file(const char* path, int node_count_override,
                                                  graud_graph** out);
GRAUD_API void graud_graph_destroy(graud_graph* g);
GRAUD_API int graud_graph_node_count(const graud_graph* g);
GRAUD_API long graud_graph_edge_count(const graud_graph* g);
GRAUD_API int graud_graph_is_connected(const graud_graph* g);
/* out must hold node_count * node_count doubles (row-major). */
GRAUD_API graud_status graud_graph_laplacian(const graud_graph* g, double* out);
GRAUD_API graud_status graud_graph_laplacian_quadratic(const graud_graph* g, const double* x,
                                                       double* out);

/* Smallest eigenvalue above zero_tol of a symmetric PSD matrix (order x order,
 * row-major). zero_tol <= 0 selects the default 1e-8. */
GRAUD_API graud_status graud_smallest_nonzero_eigenvalue(const double* matrix, int order,
                                                         double zero_tol, double* out);

/* ---------- feature designs ---------- */

typedef struct graud_design graud_design;

GRAUD_API graud_status graud_design_create(const double* features, int rows, int cols,
                                           graud_design** out);
/* CSV with one row per node, numeric columns, optional header row. */
GRAUD_API graud_status graud_design_from_csv(const char* path, graud_design** out);
GRAUD_API void graud_design_destroy(graud_design* d);
GRAUD_API int graud_design_rows(const graud_design* d);
GRAUD_API int graud_design_cols(const graud_design* d);
GRAUD_API int graud_design_rank(const graud_design* d);
/* out must hold rows * rows doubles: the residual projector H. */
GRAUD_API graud_status graud_design_projector(const graud_design* d, double* out);

/* A validated (graph, counts, features) triple loaded from files. */
typedef struct graud_instance graud_instance;

/* Resolves the node count as: override > edge-file header > counts row count.
 * Verifies the counts cover nodes 0..M-1 exactly once. standardize != 0 maps
 * feature columns to mean 0 / variance 1 (constant columns left untouched). */
GRAUD_API graud_status graud_instance_load(const char* edges_path, const char* counts_path,
                                           const char* features_path, int node_count_override,
                                           int standardize, graud_instance** out);
GRAUD_API void graud_instance_destroy(graud_instance* li);
GRAUD_API int graud_instance_size(const graud_instance* li);
/* out must hold node_count doubles. */
GRAUD_API graud_status graud_instance_counts(const graud_instance* li, double* out);
GRAUD_API graud_status graud_instance_graph(const graud_instance* li, graud_graph** out);
GRAUD_API graud_status graud_instance_design(const graud_instance* li, graud_design** out);

typedef struct graud_assumption_report {
  int connected;
  int ones_in_null_h;     /* all-ones vector lies in the feature column space */
  int assumption2_holds;  /* null(L) and null(H) intersect only in zero */
  double delta1;          /* smallest singular value of [L H] */
  double lambda_min_l;    /* smallest nonzero Laplacian eigenvalue (0 if edgeless) */
  double lambda_min_h;    /* smallest nonzero projector eigenvalue */
} graud_assumption_report;

GRAUD_API graud_status graud_check_assumptions(const graud_graph* g, const graud_design* d,
                                               graud_assumption_report* out);
GRAUD_API graud_status graud_delta1(const double* L, const double* H, int order, double* out);

/* ---------- estimation problems ---------- */

typedef struct graud_problem graud_problem;

/* log(y) or log(y + pseudocount); pseudocount <= 0 requires y >= 1. */
GRAUD_API graud_status graud_log_counts(const double* y, int length, double pseudocount,
                                        double* out);

GRAUD_API graud_status graud_problem_create(const graud_graph* g, const graud_design* d,
                                            const double* y_log, double lambda1, double lambda2,
                                            graud_problem** out);
GRAUD_API void graud_problem_destroy(graud_problem* p);
GRAUD_API int graud_problem_size(const graud_problem* p);

GRAUD_API graud_status graud_loss(const graud_problem* p, const double* u, const double* v,
                                  double* out);
GRAUD_API graud_status graud_gradients(const graud_problem* p, const double* u, const double* v,
                                       double* grad_u, double* grad_v);
/* ||u+v||^2 + lambda2 u^T H u + lambda1 v^T L v. */
GRAUD_API graud_status graud_hessian_quadratic_form(const graud_problem* p, const double* u,
                                                    const double* v, double* out);
/* 2 / (2 + lambda2 lmax(H) + lambda1 lmax(L)); steps below this descend. */
GRAUD_API graud_status graud_recommended_step_size(const graud_problem* p, double* out);

typedef struct graud_solver_config {
  long inner_iters;       /* gradient steps per block, default 50 */
  long outer_iters;       /* alternation rounds, default 2000 */
  double step_size;       /* <= 0: 0.9 x recommended bound */
  double stop_threshold;  /* early stop when a round improves less than this */
  int project_feasible;   /* clamp u >= log y, v <= 0 after each block */
} graud_solver_config;

GRAUD_API void graud_solver_config_default(graud_solver_config* cfg);

typedef struct graud_solution graud_solution;

/* init_u/init_v may both be NULL for the default start u = y_log, v = 0. */
GRAUD_API graud_status graud_solve(const graud_problem* p, const graud_solver_config* cfg,
                                   const double* init_u, const double* init_v,
                                   graud_solution** out);
GRAUD_API void graud_solution_destroy(graud_solution* s);
GRAUD_API int graud_solution_size(const graud_solution* s);
/* Any output pointer may be NULL to skip that field. */
GRAUD_API graud_status graud_solution_get(const graud_solution* s, double* u, double* v,
                                          double* n_hat, double* p_hat);
GRAUD_API long graud_solution_trace_length(const graud_solution* s);
GRAUD_API graud_status graud_solution_trace(const graud_solution* s, double* out);
GRAUD_API int graud_solution_converged(const graud_solution* s);
GRAUD_API long graud_solution_iterations(const graud_solution* s);
GRAUD_API double graud_solution_step_size(const graud_solution* s);

/* ---------- synthetic scenarios ---------- */

typedef enum graud_graph_family {
  GRAUD_FAMILY_PATH = 0,
  GRAUD_FAMILY_CYCLE = 1,
  GRAUD_FAMILY_STAR = 2,
  GRAUD_FAMILY_GRID = 3
} graud_graph_family;

typedef struct graud_scenario_params {
  int m;
  int k;
  double p_mean;
  double p_sd;
  double clip_lo;
  double clip_hi;
  double smoothness_cap;  /* accept p only when p^T L p <= cap */
  long min_count;         /* > 0 pins the smallest true count to this value */
  double sigma_n;         /* optional log-scale count noise, default 0 */
  int family;             /* graud_graph_family */
  long max_attempts;      /* rejection budget, default 10000 */
} graud_scenario_params;

GRAUD_API void graud_scenario_params_default(graud_scenario_params* params);

typedef struct graud_scenario graud_scenario;

GRAUD_API graud_status graud_scenario_generate(const graud_scenario_params* params,
                                               unsigned long long seed, graud_scenario** out);
GRAUD_API graud_status graud_scenario_to_json(const graud_scenario* sc, char** out);
GRAUD_API graud_status graud_scenario_from_json(const char* text, graud_scenario** out);
GRAUD_API void graud_scenario_destroy(graud_scenario* sc);
GRAUD_API int graud_scenario_size(const graud_scenario* sc);
GRAUD_API int graud_scenario_features(const graud_scenario* sc);
/* Any output pointer may be NULL; X is row-major m x k. */
GRAUD_API graud_status graud_scenario_get(const graud_scenario* sc, double* n0, double* p0,
                                          double* y, double* X);
GRAUD_API graud_status graud_scenario_graph(const graud_scenario* sc, graud_graph** out);
GRAUD_API graud_status graud_scenario_design(const graud_scenario* sc, graud_design** out);

/* ---------- diagnostics ---------- */

GRAUD_API graud_status graud_relative_l1_error(const double* estimate, const double* truth,
                                               int length, double* out);

typedef struct graud_recovery_bound {
  double eps_y_sq;  /* || y_log - u0 - v0 ||^2 */
  double eps_u;     /* u0^T H u0 */
  double eps_v;     /* v0^T L v0 */
  double c0;
  double bound_u;   /* bound on || u* - u0 ||^2 */
  double bound_v;   /* bound on || v* - v0 ||^2 */
  double delta1;
} graud_recovery_bound;

GRAUD_API graud_status graud_recovery_bound_compute(const graud_scenario* sc,
                                                    const graud_problem* p,
                                                    graud_recovery_bound* out);

typedef struct graud_tail_bound {
  double delta;
  double mu;     /* n p */
  double upper;  /* bound on P(y >= (1+delta) mu) */
  double lower;  /* bound on P(y <= (1-delta) mu) */
} graud_tail_bound;

GRAUD_API graud_status graud_chernoff_tail_bounds(long long n, double p, double delta,
                                                  graud_tail_bound* out);

typedef struct graud_concentration_result {
  double linear_freq;   /* frequency of |y - np| >= n^(1/2+eps) */
  double linear_bound;  /* 2 exp(-n^(2 eps) / (3 p)) */
  double log_freq;      /* frequency of |log y - log(np)| >= n^(-1/2+eps)/p over y >= 1 */
  long log_samples;
} graud_concentration_result;

/* eps must lie in (0, 0.25]; trials >= 100. */
GRAUD_API graud_status graud_concentration_check(long long n, double p, double eps, long trials,
                                                 unsigned long long seed,
                                                 graud_concentration_result* out);

/* ---------- cross-validation ---------- */

/* Node-level folds; fidelity restricted to training nodes; held-out score is
 * the squared residual of y_log against u+v. Ties prefer smaller lambda1 then
 * smaller lambda2. score_table, when non-NULL, receives
 * len1 * len2 * folds rows of (lambda1, lambda2, fold, score). */
GRAUD_API graud_status graud_cross_validate(const graud_graph* g, const graud_design* d,
                                            const double* y, int length, const double* lambda1_grid,
                                            int len1, const double* lambda2_grid, int len2,
                                            int folds, unsigned long long seed, double pseudocount,
                                            const graud_solver_config* cfg, double* best_lambda1,
                                            double* best_lambda2, double* score_table);

/* ---------- experiment harness ---------- */

typedef struct graud_experiment_params {
  int m;
  int k;
  long reps;
  unsigned long long base_seed;
  double lambda1;
  double lambda2;
  double pseudocount;
  int family;        /* graud_graph_family */
  long max_attempts;
  graud_solver_config solver;
} graud_experiment_params;

/* Fills name-appropriate defaults; name NULL or unknown gives the generic set. */
GRAUD_API void graud_experiment_params_default(const char* name, graud_experiment_params* params);

/* Names: convergence, sweep-min-count, sweep-smoothness, m20. Writes data
 * files into out_dir and, when summary_json is non-NULL, returns a summary
 * document (free with graud_string_free). */
GRAUD_API graud_status graud_experiment_run(const char* name,
                                            const graud_experiment_params* params,
                                            const char* out_dir, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* GRAUD_H */
