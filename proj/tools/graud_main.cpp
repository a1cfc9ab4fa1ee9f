// Command-line front end for the graud shared library. Subcommands: solve,
// check, cv, simulate, experiment. Exit codes: 0 success, 2 input error,
// 3 assumption violation, 4 numerical failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graud/graud.h"

using nlohmann::json;

namespace {

int exit_code_for(graud_status status) {
  switch (status) {
    case GRAUD_OK:
      return 0;
    case GRAUD_ERR_ASSUMPTION_VIOLATED:
      return 3;
    case GRAUD_ERR_NOT_PSD:
    case GRAUD_ERR_ALL_ZERO_SPECTRUM:
    case GRAUD_ERR_DIVERGED_LOSS:
    case GRAUD_ERR_NON_FINITE_ITERATE:
    case GRAUD_ERR_INTERNAL:
      return 4;
    default:
      return 2;  // input, parse, or configuration problems
  }
}

struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void bail(graud_status status, const std::string& context) {
  std::string detail = graud_last_error_message();
  throw CliFailure{exit_code_for(status), context + ": " + graud_status_name(status) +
                                              (detail.empty() ? "" : ": " + detail)};
}

void check(graud_status status, const std::string& context) {
  if (status != GRAUD_OK) bail(status, context);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw CliFailure{2, "cannot write '" + path + "'"};
  out << content;
  if (!out) throw CliFailure{2, "write failed for '" + path + "'"};
}

void emit(const std::string& path, const std::string& content) {
  if (path == "-" || path.empty())
    std::cout << content;
  else
    write_file(path, content);
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CliFailure{2, "bad grid value '" + tok + "'"};
    }
  }
  if (out.empty()) throw CliFailure{2, "empty grid '" + spec + "'"};
  return out;
}

// Seeds resolve as: explicit flag > GRAUD_SEED env > built-in default.
unsigned long long resolve_seed(const CLI::Option* opt, unsigned long long flag_value,
                                unsigned long long fallback) {
  if (opt && opt->count() > 0) return flag_value;
  if (const char* env = std::getenv("GRAUD_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CliFailure{2, std::string("GRAUD_SEED is not an integer: '") + env + "'"};
    }
  }
  return fallback;
}

json load_config_json(int argc, char** argv) {
  std::string path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") path = argv[i + 1];
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw CliFailure{2, "cannot open config '" + path + "'"};
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw CliFailure{2, "config '" + path + "' is not a JSON object"};
  return j;
}

template <typename T>
T cfg_or(const json& cfg, const char* key, T fallback) {
  if (cfg.contains(key)) {
    try {
      return cfg.at(key).get<T>();
    } catch (const json::exception&) {
      throw CliFailure{2, std::string("config key '") + key + "' has the wrong type"};
    }
  }
  return fallback;
}

struct SolverFlags {
  long inner = 50;
  long outer = 2000;
  double step = 0.0;
  double threshold = 1e-10;
  bool no_project = false;

  void register_options(CLI::App* cmd, const json& cfg) {
    inner = cfg_or(cfg, "inner", inner);
    outer = cfg_or(cfg, "outer", outer);
    step = cfg_or(cfg, "step", step);
    threshold = cfg_or(cfg, "threshold", threshold);
    no_project = cfg_or(cfg, "no_project", no_project);
    cmd->add_option("--inner", inner, "gradient steps per block");
    cmd->add_option("--outer", outer, "alternation rounds");
    cmd->add_option("--step", step, "step size (0 = auto from curvature bound)");
    cmd->add_option("--threshold", threshold, "stop when a round improves less than this");
    cmd->add_flag("--no-project", no_project, "skip the feasibility clamp (u >= log y, v <= 0)");
  }

  graud_solver_config to_config() const {
    graud_solver_config c;
    graud_solver_config_default(&c);
    c.inner_iters = inner;
    c.outer_iters = outer;
    c.step_size = step;
    c.stop_threshold = threshold;
    c.project_feasible = no_project ? 0 : 1;
    return c;
  }
};

struct Handles {
  graud_instance* instance = nullptr;
  graud_graph* graph = nullptr;
  graud_design* design = nullptr;
  graud_problem* problem = nullptr;
  graud_solution* solution = nullptr;
  graud_scenario* scenario = nullptr;
  ~Handles() {
    graud_solution_destroy(solution);
    graud_problem_destroy(problem);
    graud_design_destroy(design);
    graud_graph_destroy(graph);
    graud_instance_destroy(instance);
    graud_scenario_destroy(scenario);
  }
};

json assumptions_to_json(const graud_assumption_report& rep) {
  return {{"connected", rep.connected != 0},
          {"ones_in_feature_span", rep.ones_in_null_h != 0},
          {"identifiable", rep.assumption2_holds != 0},
          {"delta1", rep.delta1},
          {"lambda_min_laplacian", rep.lambda_min_l},
          {"lambda_min_projector", rep.lambda_min_h}};
}

int run_solve(const std::string& edges, const std::string& counts, const std::string& features,
              int nodes, double lambda1, double lambda2, const SolverFlags& solver,
              double pseudocount, bool standardize, bool force, double init_p,
              const std::string& truth_path, const std::string& out_path) {
  auto t0 = std::chrono::steady_clock::now();
  Handles h;
  check(graud_instance_load(edges.c_str(), counts.c_str(), features.c_str(), nodes,
                            standardize ? 1 : 0, &h.instance),
        "loading inputs");
  const int m = graud_instance_size(h.instance);
  check(graud_instance_graph(h.instance, &h.graph), "building graph");
  check(graud_instance_design(h.instance, &h.design), "building feature projector");

  graud_assumption_report rep;
  check(graud_check_assumptions(h.graph, h.design, &rep), "checking assumptions");
  if (!rep.assumption2_holds && !force)
    throw CliFailure{3,
                     "identifiability assumption fails (the constant direction is invisible to "
                     "both penalties); rerun with --force to solve anyway"};

  std::vector<double> y(m), y_log(m);
  check(graud_instance_counts(h.instance, y.data()), "reading counts");
  check(graud_log_counts(y.data(), m, pseudocount, y_log.data()), "taking logs");
  check(graud_problem_create(h.graph, h.design, y_log.data(), lambda1, lambda2, &h.problem),
        "assembling problem");

  graud_solver_config cfg = solver.to_config();
  std::vector<double> init_u, init_v;
  const double* pu = nullptr;
  const double* pv = nullptr;
  if (init_p > 0.0) {
    if (init_p > 1.0) throw CliFailure{2, "--init-p must lie in (0, 1]"};
    init_u = y_log;
    init_v.assign(m, std::log(init_p));
    pu = init_u.data();
    pv = init_v.data();
  }
  check(graud_solve(h.problem, &cfg, pu, pv, &h.solution), "solving");

  std::vector<double> u(m), v(m), n_hat(m), p_hat(m);
  check(graud_solution_get(h.solution, u.data(), v.data(), n_hat.data(), p_hat.data()),
        "reading solution");
  std::vector<double> trace(graud_solution_trace_length(h.solution));
  check(graud_solution_trace(h.solution, trace.data()), "reading loss trace");

  json report;
  report["format_version"] = 1;
  report["config"] = {{"edges", edges},
                      {"counts", counts},
                      {"features", features},
                      {"lambda1", lambda1},
                      {"lambda2", lambda2},
                      {"pseudocount", pseudocount},
                      {"standardize", standardize},
                      {"force", force},
                      {"init_p", init_p > 0.0 ? init_p : 1.0},
                      {"solver",
                       {{"inner_iters", cfg.inner_iters},
                        {"outer_iters", cfg.outer_iters},
                        {"step_size", cfg.step_size},
                        {"stop_threshold", cfg.stop_threshold},
                        {"project_feasible", cfg.project_feasible != 0}}}};
  report["assumptions"] = assumptions_to_json(rep);
  report["converged"] = graud_solution_converged(h.solution) != 0;
  report["iterations_used"] = graud_solution_iterations(h.solution);
  report["step_size"] = graud_solution_step_size(h.solution);
  report["loss_trace"] = trace;
  report["solution"] = {{"u", u}, {"v", v}, {"n_hat", n_hat}, {"p_hat", p_hat}};

  if (!truth_path.empty()) {
    std::ifstream in(truth_path);
    if (!in) throw CliFailure{2, "cannot open truth scenario '" + truth_path + "'"};
    std::stringstream ss;
    ss << in.rdbuf();
    check(graud_scenario_from_json(ss.str().c_str(), &h.scenario), "parsing truth scenario");
    if (graud_scenario_size(h.scenario) != m)
      throw CliFailure{2, "truth scenario order does not match the inputs"};
    std::vector<double> n0(m), p0(m);
    check(graud_scenario_get(h.scenario, n0.data(), p0.data(), nullptr, nullptr),
          "reading truth scenario");
    double err_n = 0.0, err_p = 0.0;
    check(graud_relative_l1_error(n_hat.data(), n0.data(), m, &err_n), "scoring n");
    check(graud_relative_l1_error(p_hat.data(), p0.data(), m, &err_p), "scoring p");
    report["errors"] = {{"relative_l1_n", err_n}, {"relative_l1_p", err_p}};
  }

  auto t1 = std::chrono::steady_clock::now();
  report["timing"] = {{"seconds", std::chrono::duration<double>(t1 - t0).count()}};
  emit(out_path, report.dump(2) + "\n");
  return 0;
}

int run_check(const std::string& edges, const std::string& features, int nodes,
              const std::string& out_path) {
  Handles h;
  check(graud_graph_from_edge_file(edges.c_str(), nodes, &h.graph), "loading edges");
  check(graud_design_from_csv(features.c_str(), &h.design), "loading features");
  if (graud_design_rows(h.design) != graud_graph_node_count(h.graph))
    throw CliFailure{2, "feature rows do not match the node count"};
  graud_assumption_report rep;
  check(graud_check_assumptions(h.graph, h.design, &rep), "checking assumptions");
  json report;
  report["node_count"] = graud_graph_node_count(h.graph);
  report["edge_count"] = graud_graph_edge_count(h.graph);
  report["assumptions"] = assumptions_to_json(rep);
  emit(out_path, report.dump(2) + "\n");
  return rep.assumption2_holds ? 0 : 3;
}

int run_cv(const std::string& edges, const std::string& counts, const std::string& features,
           int nodes, const std::string& grid1_spec, const std::string& grid2_spec, int folds,
           unsigned long long seed, double pseudocount, bool standardize,
           const SolverFlags& solver, const std::string& scores_path) {
  Handles h;
  check(graud_instance_load(edges.c_str(), counts.c_str(), features.c_str(), nodes,
                            standardize ? 1 : 0, &h.instance),
        "loading inputs");
  const int m = graud_instance_size(h.instance);
  check(graud_instance_graph(h.instance, &h.graph), "building graph");
  check(graud_instance_design(h.instance, &h.design), "building feature projector");
  std::vector<double> y(m);
  check(graud_instance_counts(h.instance, y.data()), "reading counts");

  auto grid1 = parse_grid(grid1_spec);
  auto grid2 = parse_grid(grid2_spec);
  graud_solver_config cfg = solver.to_config();
  double best1 = 0.0, best2 = 0.0;
  std::vector<double> table(grid1.size() * grid2.size() * static_cast<size_t>(folds) * 4);
  check(graud_cross_validate(h.graph, h.design, y.data(), m, grid1.data(),
                             static_cast<int>(grid1.size()), grid2.data(),
                             static_cast<int>(grid2.size()), folds, seed, pseudocount, &cfg,
                             &best1, &best2, table.data()),
        "cross-validating");

  if (!scores_path.empty()) {
    std::ostringstream csv;
    csv << "lambda1,lambda2,fold,score\n";
    for (size_t r = 0; r < table.size(); r += 4)
      csv << fmt17(table[r]) << "," << fmt17(table[r + 1]) << ","
          << static_cast<long>(table[r + 2]) << "," << fmt17(table[r + 3]) << "\n";
    write_file(scores_path, csv.str());
  }
  json out = {{"lambda1", best1}, {"lambda2", best2}, {"folds", folds}, {"seed", seed}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_simulate(const graud_scenario_params& params, unsigned long long seed,
                 const std::string& out_path, const std::string& emit_dir) {
  Handles h;
  check(graud_scenario_generate(&params, seed, &h.scenario), "generating scenario");
  char* text = nullptr;
  check(graud_scenario_to_json(h.scenario, &text), "serializing scenario");
  std::string doc(text);
  graud_string_free(text);
  emit(out_path, doc);

  if (!emit_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(emit_dir, ec);
    if (ec) throw CliFailure{2, "cannot create directory '" + emit_dir + "'"};
    const int m = graud_scenario_size(h.scenario);
    const int k = graud_scenario_features(h.scenario);
    std::vector<double> n0(m), p0(m), y(m), X(static_cast<size_t>(m) * k);
    check(graud_scenario_get(h.scenario, n0.data(), p0.data(), y.data(), X.data()),
          "reading scenario");
    check(graud_scenario_graph(h.scenario, &h.graph), "reading scenario graph");

    // recover the edge set from the Laplacian off-diagonal (simple graph)
    std::ostringstream ef;
    ef << "nodes " << m << "\n";
    std::vector<double> L(static_cast<size_t>(m) * m);
    check(graud_graph_laplacian(h.graph, L.data()), "reading laplacian");
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (L[static_cast<size_t>(i) * m + j] != 0.0) ef << i << " " << j << "\n";
    write_file(emit_dir + "/edges.txt", ef.str());

    std::ostringstream cf;
    cf << "node,y\n";
    for (int i = 0; i < m; ++i) cf << i << "," << fmt17(y[i]) << "\n";
    write_file(emit_dir + "/counts.csv", cf.str());

    std::ostringstream ff;
    for (int c = 0; c < k; ++c) ff << (c ? "," : "") << "x" << c;
    ff << "\n";
    for (int i = 0; i < m; ++i) {
      for (int c = 0; c < k; ++c) ff << (c ? "," : "") << fmt17(X[static_cast<size_t>(i) * k + c]);
      ff << "\n";
    }
    write_file(emit_dir + "/features.csv", ff.str());
    write_file(emit_dir + "/truth.json", doc);
  }
  return 0;
}

int run_experiment_cmd(const std::string& name, const graud_experiment_params& params,
                       const std::string& out_dir) {
  char* summary = nullptr;
  check(graud_experiment_run(name.c_str(), &params, out_dir.c_str(), &summary),
        "running experiment");
  std::cout << summary;
  graud_string_free(summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    json cfg = load_config_json(argc, argv);

    CLI::App app{"graph-regularized debiasing of underreported count data"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --config appear after the subcommand name
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with defaults for any option");

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "estimate counts and discovery probabilities");
    std::string s_edges, s_counts, s_features;
    std::string s_truth = cfg_or(cfg, "truth", std::string());
    std::string s_out = cfg_or(cfg, "out", std::string("-"));
    int s_nodes = cfg_or(cfg, "nodes", -1);
    double s_l1 = cfg_or(cfg, "lambda1", 0.01), s_l2 = cfg_or(cfg, "lambda2", 0.9);
    double s_pseudo = cfg_or(cfg, "pseudocount", 0.0);
    double s_init_p = cfg_or(cfg, "init_p", 0.0);
    bool s_std = cfg_or(cfg, "standardize", false), s_force = cfg_or(cfg, "force", false);
    SolverFlags s_solver;
    solve_cmd->add_option("--edges", s_edges, "edge list file")->required();
    solve_cmd->add_option("--counts", s_counts, "counts CSV (node,y)")->required();
    solve_cmd->add_option("--features", s_features, "features CSV")->required();
    solve_cmd->add_option("--nodes", s_nodes, "node count override");
    solve_cmd->add_option("--lambda1", s_l1, "smoothness weight on log p");
    solve_cmd->add_option("--lambda2", s_l2, "feature-residual weight on log n");
    solve_cmd->add_option("--pseudocount", s_pseudo, "add this to counts before the log");
    solve_cmd->add_option("--init-p", s_init_p, "constant starting probability in (0,1]");
    solve_cmd->add_flag("--standardize", s_std, "standardize feature columns");
    solve_cmd->add_flag("--force", s_force, "solve even when identifiability fails");
    solve_cmd->add_option("--truth", s_truth, "scenario JSON with ground truth for scoring");
    solve_cmd->add_option("--out", s_out, "report path ('-' for stdout)");
    s_solver.register_options(solve_cmd, cfg);

    // check
    auto* check_cmd = app.add_subcommand("check", "report identifiability diagnostics");
    std::string c_edges, c_features;
    std::string c_out = cfg_or(cfg, "out", std::string("-"));
    int c_nodes = cfg_or(cfg, "nodes", -1);
    check_cmd->add_option("--edges", c_edges, "edge list file")->required();
    check_cmd->add_option("--features", c_features, "features CSV")->required();
    check_cmd->add_option("--nodes", c_nodes, "node count override");
    check_cmd->add_option("--out", c_out, "report path ('-' for stdout)");

    // cv
    auto* cv_cmd = app.add_subcommand("cv", "grid-search lambdas by node-fold cross-validation");
    std::string v_edges, v_counts, v_features;
    std::string v_grid1 = cfg_or(cfg, "lambda1_grid", std::string("0.001,0.01,0.1,1"));
    std::string v_grid2 = cfg_or(cfg, "lambda2_grid", std::string("0.09,0.9,9"));
    std::string v_scores = cfg_or(cfg, "scores", std::string());
    int v_nodes = cfg_or(cfg, "nodes", -1);
    int v_folds = cfg_or(cfg, "folds", 5);
    double v_pseudo = cfg_or(cfg, "pseudocount", 0.0);
    bool v_std = cfg_or(cfg, "standardize", false);
    unsigned long long v_seed = cfg_or(cfg, "seed", 1234ULL);
    SolverFlags v_solver;
    cv_cmd->add_option("--edges", v_edges, "edge list file")->required();
    cv_cmd->add_option("--counts", v_counts, "counts CSV (node,y)")->required();
    cv_cmd->add_option("--features", v_features, "features CSV")->required();
    cv_cmd->add_option("--nodes", v_nodes, "node count override");
    cv_cmd->add_option("--lambda1-grid", v_grid1, "comma-separated candidates");
    cv_cmd->add_option("--lambda2-grid", v_grid2, "comma-separated candidates");
    cv_cmd->add_option("--folds", v_folds, "fold count");
    auto* v_seed_opt = cv_cmd->add_option("--seed", v_seed, "fold-shuffle seed");
    cv_cmd->add_option("--pseudocount", v_pseudo, "add this to counts before the log");
    cv_cmd->add_flag("--standardize", v_std, "standardize feature columns");
    cv_cmd->add_option("--scores", v_scores, "write the per-fold score table CSV here");
    v_solver.register_options(cv_cmd, cfg);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "generate a synthetic scenario");
    graud_scenario_params sp;
    graud_scenario_params_default(&sp);
    sp.m = cfg_or(cfg, "m", sp.m);
    sp.k = cfg_or(cfg, "k", sp.k);
    sp.p_mean = cfg_or(cfg, "p_mean", sp.p_mean);
    sp.p_sd = cfg_or(cfg, "p_sd", sp.p_sd);
    sp.clip_lo = cfg_or(cfg, "clip_lo", sp.clip_lo);
    sp.clip_hi = cfg_or(cfg, "clip_hi", sp.clip_hi);
    sp.smoothness_cap = cfg_or(cfg, "smoothness_cap", sp.smoothness_cap);
    sp.min_count = cfg_or(cfg, "min_count", sp.min_count);
    sp.sigma_n = cfg_or(cfg, "sigma_n", sp.sigma_n);
    sp.max_attempts = cfg_or(cfg, "max_attempts", sp.max_attempts);
    std::string sim_family = cfg_or(cfg, "family", std::string("path"));
    std::string sim_out = cfg_or(cfg, "out", std::string("-"));
    std::string sim_emit = cfg_or(cfg, "emit_files", std::string());
    unsigned long long sim_seed = cfg_or(cfg, "seed", 1ULL);
    sim_cmd->add_option("--m", sp.m, "node count");
    sim_cmd->add_option("--k", sp.k, "feature count");
    sim_cmd->add_option("--p-mean", sp.p_mean, "probability field mean");
    sim_cmd->add_option("--p-sd", sp.p_sd, "probability field spread");
    sim_cmd->add_option("--clip-lo", sp.clip_lo, "lower probability clip");
    sim_cmd->add_option("--clip-hi", sp.clip_hi, "upper probability clip");
    sim_cmd->add_option("--cap", sp.smoothness_cap, "smoothness cap on p^T L p");
    sim_cmd->add_option("--min-count", sp.min_count, "pin the smallest true count to this");
    sim_cmd->add_option("--sigma-n", sp.sigma_n, "log-scale count noise");
    sim_cmd->add_option("--max-attempts", sp.max_attempts, "rejection budget");
    sim_cmd->add_option("--family", sim_family, "graph family: path, cycle, star, grid");
    auto* sim_seed_opt = sim_cmd->add_option("--seed", sim_seed, "scenario seed");
    sim_cmd->add_option("--out", sim_out, "scenario JSON path ('-' for stdout)");
    sim_cmd->add_option("--emit-files", sim_emit,
                        "also write edges.txt, counts.csv, features.csv, truth.json here");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "run a named synthetic experiment");
    std::string exp_name;
    std::string exp_dir = cfg_or(cfg, "out_dir", std::string());
    exp_cmd->add_option("name", exp_name,
                        "convergence, sweep-min-count, sweep-smoothness, or m20")
        ->required();
    exp_cmd->add_option("--out-dir", exp_dir, "directory for emitted data files")->required();
    long exp_reps = cfg_or(cfg, "reps", -1L);
    unsigned long long exp_seed = cfg_or(cfg, "seed", 0ULL);
    int exp_m = cfg_or(cfg, "m", -1), exp_k = cfg_or(cfg, "k", -1);
    double exp_l1 = cfg_or(cfg, "lambda1", -1.0), exp_l2 = cfg_or(cfg, "lambda2", -1.0);
    double exp_pseudo = cfg_or(cfg, "pseudocount", -1.0);
    std::string exp_family = cfg_or(cfg, "family", std::string());
    exp_cmd->add_option("--reps", exp_reps, "repetitions or seed count");
    auto* exp_seed_opt = exp_cmd->add_option("--seed", exp_seed, "base seed");
    exp_cmd->add_option("--m", exp_m, "node count");
    exp_cmd->add_option("--k", exp_k, "feature count");
    exp_cmd->add_option("--lambda1", exp_l1, "smoothness weight");
    exp_cmd->add_option("--lambda2", exp_l2, "feature-residual weight");
    exp_cmd->add_option("--pseudocount", exp_pseudo, "pseudocount for the harness solves");
    exp_cmd->add_option("--family", exp_family, "graph family: path, cycle, star, grid");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      int rc = app.exit(e);  // prints help or the parse error
      return rc == 0 ? 0 : 2;
    }

    if (solve_cmd->parsed())
      return run_solve(s_edges, s_counts, s_features, s_nodes, s_l1, s_l2, s_solver, s_pseudo,
                       s_std, s_force, s_init_p, s_truth, s_out);
    if (check_cmd->parsed()) return run_check(c_edges, c_features, c_nodes, c_out);
    if (cv_cmd->parsed()) {
      unsigned long long seed = resolve_seed(v_seed_opt, v_seed, 1234ULL);
      return run_cv(v_edges, v_counts, v_features, v_nodes, v_grid1, v_grid2, v_folds, seed,
                    v_pseudo, v_std, v_solver, v_scores);
    }
    if (sim_cmd->parsed()) {
      if (sim_family == "path")
        sp.family = GRAUD_FAMILY_PATH;
      else if (sim_family == "cycle")
        sp.family = GRAUD_FAMILY_CYCLE;
      else if (sim_family == "star")
        sp.family = GRAUD_FAMILY_STAR;
      else if (sim_family == "grid")
        sp.family = GRAUD_FAMILY_GRID;
      else
        throw CliFailure{2, "unknown graph family '" + sim_family + "'"};
      unsigned long long seed = resolve_seed(sim_seed_opt, sim_seed, 1ULL);
      return run_simulate(sp, seed, sim_out, sim_emit);
    }
    if (exp_cmd->parsed()) {
      graud_experiment_params ep;
      graud_experiment_params_default(exp_name.c_str(), &ep);
      if (exp_reps > 0) ep.reps = exp_reps;
      if (exp_m > 0) ep.m = exp_m;
      if (exp_k > 0) ep.k = exp_k;
      if (exp_l1 >= 0.0) ep.lambda1 = exp_l1;
      if (exp_l2 >= 0.0) ep.lambda2 = exp_l2;
      if (exp_pseudo >= 0.0) ep.pseudocount = exp_pseudo;
      if (!exp_family.empty()) {
        if (exp_family == "path")
          ep.family = GRAUD_FAMILY_PATH;
        else if (exp_family == "cycle")
          ep.family = GRAUD_FAMILY_CYCLE;
        else if (exp_family == "star")
          ep.family = GRAUD_FAMILY_STAR;
        else if (exp_family == "grid")
          ep.family = GRAUD_FAMILY_GRID;
        else
          throw CliFailure{2, "unknown graph family '" + exp_family + "'"};
      }
      ep.base_seed = resolve_seed(exp_seed_opt, exp_seed, ep.base_seed);
      return run_experiment_cmd(exp_name, ep, exp_dir);
    }
    return 2;
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
