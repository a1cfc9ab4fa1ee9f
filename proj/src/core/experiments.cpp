#include "experiments.hpp"

#include <cmath>
#include <filesystem>

#include "io.hpp"
#include "rng.hpp"

namespace graud {

namespace {

struct SolvedScenario {
  Scenario scenario;
  Solution solution;
  double err_n = 0.0;
  double err_p = 0.0;
};

SolvedScenario solve_scenario(const Scenario& sc, const ExperimentParams& params) {
  Eigen::VectorXd y_log = log_counts(sc.y, params.pseudocount);
  Eigen::MatrixXd L = laplacian(sc.graph);
  DesignBasis basis = projection_matrix(sc.X);
  ProblemInstance inst = make_problem(y_log, L, basis.projector, params.lambda1, params.lambda2);
  SolvedScenario out{sc, solve(inst, params.solver)};
  out.err_n = relative_l1_error(out.solution.n_hat, sc.n0);
  out.err_p = relative_l1_error(out.solution.p_hat, sc.p0);
  return out;
}

GeneratorSettings base_settings(const ExperimentParams& params) {
  GeneratorSettings gen;
  gen.family = params.family;
  gen.max_attempts = params.max_attempts;
  return gen;
}

nlohmann::json params_json(const ExperimentParams& p, const GeneratorSettings& gen) {
  return {
      {"m", p.m},
      {"k", p.k},
      {"reps", p.reps},
      {"base_seed", p.base_seed},
      {"lambda1", p.lambda1},
      {"lambda2", p.lambda2},
      {"pseudocount", p.pseudocount},
      {"family", graph_family_name(p.family)},
      {"max_attempts", p.max_attempts},
      {"solver",
       {{"inner_iters", p.solver.inner_iters},
        {"outer_iters", p.solver.outer_iters},
        {"step_size", p.solver.step_size},
        {"stop_threshold", p.solver.stop_threshold},
        {"project_feasible", p.solver.project_feasible}}},
      {"generator",
       {{"p_mean", gen.p_mean},
        {"p_sd", gen.p_sd},
        {"clip_lo", gen.clip_lo},
        {"clip_hi", gen.clip_hi},
        {"smoothness_cap", gen.smoothness_cap},
        {"sigma_n", gen.sigma_n}}},
  };
}

void write_metadata(const std::string& dir, const std::string& name, const ExperimentParams& p,
                    const GeneratorSettings& gen, ExperimentSummary& summary) {
  nlohmann::json j;
  j["experiment"] = name;
  j["params"] = params_json(p, gen);
  auto vals = nlohmann::json::object();
  for (const auto& [key, value] : summary.values) vals[key] = value;
  j["summary"] = vals;
  write_text_file(dir + "/metadata.json", j.dump(2) + "\n");
  summary.files.push_back("metadata.json");
}

ExperimentSummary run_convergence(const ExperimentParams& params, const std::string& dir) {
  GeneratorSettings gen = base_settings(params);
  Scenario sc = make_scenario(params.m, params.k, gen, derive_seed(params.base_seed, 0));
  Eigen::VectorXd y_log = log_counts(sc.y, params.pseudocount);
  Eigen::MatrixXd L = laplacian(sc.graph);
  DesignBasis basis = projection_matrix(sc.X);
  ProblemInstance inst = make_problem(y_log, L, basis.projector, params.lambda1, params.lambda2);

  Solution a = solve(inst, params.solver);  // default start: all counts observed

  auto rng = make_rng(derive_seed(params.base_seed, 1));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd u0(params.m), v0(params.m);
  for (int i = 0; i < params.m; ++i) {
    u0[i] = y_log[i] + std::abs(normal(rng));  // feasible random start
    v0[i] = -std::abs(normal(rng));
  }
  Solution b = solve(inst, params.solver, std::make_pair(u0, v0));

  std::vector<std::vector<std::string>> rows;
  for (size_t t = 0; t < a.loss_trace.size(); ++t)
    rows.push_back({"default", std::to_string(t), format_g17(a.loss_trace[t])});
  for (size_t t = 0; t < b.loss_trace.size(); ++t)
    rows.push_back({"random", std::to_string(t), format_g17(b.loss_trace[t])});
  write_csv(dir + "/convergence.csv", {"init", "outer_round", "loss"}, rows);

  ExperimentSummary s;
  s.name = "convergence";
  s.files = {"convergence.csv"};
  s.values["terminal_loss_default"] = a.loss_trace.back();
  s.values["terminal_loss_random"] = b.loss_trace.back();
  s.values["terminal_gap"] = std::abs(a.loss_trace.back() - b.loss_trace.back());
  s.values["rounds_default"] = a.iterations_used;
  s.values["rounds_random"] = b.iterations_used;
  write_metadata(dir, s.name, params, gen, s);
  return s;
}

ExperimentSummary run_sweep_min_count(const ExperimentParams& params, const std::string& dir) {
  GeneratorSettings gen = base_settings(params);
  std::vector<std::vector<std::string>> rows;
  std::vector<double> mean_n(31, 0.0), mean_p(31, 0.0);
  for (int k = 1; k <= 30; ++k) {
    GeneratorSettings g = gen;
    g.min_count = k;
    double sn = 0.0, sp = 0.0, sn2 = 0.0, sp2 = 0.0;
    for (long rep = 0; rep < params.reps; ++rep) {
      std::uint64_t seed = derive_seed(params.base_seed, static_cast<std::uint64_t>(k) * 100000 + rep);
      auto solved = solve_scenario(make_scenario(params.m, params.k, g, seed), params);
      sn += solved.err_n;
      sp += solved.err_p;
      sn2 += solved.err_n * solved.err_n;
      sp2 += solved.err_p * solved.err_p;
    }
    double r = static_cast<double>(params.reps);
    mean_n[k] = sn / r;
    mean_p[k] = sp / r;
    double se_n = std::sqrt(std::max(0.0, sn2 / r - mean_n[k] * mean_n[k]) / r);
    double se_p = std::sqrt(std::max(0.0, sp2 / r - mean_p[k] * mean_p[k]) / r);
    rows.push_back({std::to_string(k), format_g17(mean_n[k]), format_g17(mean_p[k]),
                    format_g17(se_n), format_g17(se_p)});
  }
  write_csv(dir + "/sweep_min_count.csv",
            {"min_count", "mean_err_n", "mean_err_p", "se_err_n", "se_err_p"}, rows);

  ExperimentSummary s;
  s.name = "sweep-min-count";
  s.files = {"sweep_min_count.csv"};
  s.values["err_n_k1"] = mean_n[1];
  s.values["err_n_k10"] = mean_n[10];
  s.values["err_n_k30"] = mean_n[30];
  s.values["err_p_k1"] = mean_p[1];
  s.values["err_p_k10"] = mean_p[10];
  s.values["err_p_k30"] = mean_p[30];
  write_metadata(dir, s.name, params, gen, s);
  return s;
}

ExperimentSummary run_sweep_smoothness(const ExperimentParams& params, const std::string& dir) {
  GeneratorSettings gen = base_settings(params);
  std::vector<std::vector<std::string>> rows;
  std::vector<double> levels, mean_n, mean_p, mean_avg;
  for (int k = 1; k <= 30; ++k) {
    GeneratorSettings g = gen;
    g.smoothness_cap = 0.001 * static_cast<double>(k) * static_cast<double>(params.m);
    double sn = 0.0, sp = 0.0;
    for (long rep = 0; rep < params.reps; ++rep) {
      std::uint64_t seed = derive_seed(params.base_seed, static_cast<std::uint64_t>(k) * 100000 + rep);
      auto solved = solve_scenario(make_scenario(params.m, params.k, g, seed), params);
      sn += solved.err_n;
      sp += solved.err_p;
    }
    double r = static_cast<double>(params.reps);
    levels.push_back(k);
    mean_n.push_back(sn / r);
    mean_p.push_back(sp / r);
    mean_avg.push_back(0.5 * (sn + sp) / r);
    rows.push_back({std::to_string(k), format_g17(g.smoothness_cap), format_g17(mean_n.back()),
                    format_g17(mean_p.back())});
  }
  write_csv(dir + "/sweep_smoothness.csv", {"level", "cap", "mean_err_n", "mean_err_p"}, rows);

  ExperimentSummary s;
  s.name = "sweep-smoothness";
  s.files = {"sweep_smoothness.csv"};
  s.values["spearman_n"] = spearman(levels, mean_n);
  s.values["spearman_p"] = spearman(levels, mean_p);
  s.values["spearman_mean"] = spearman(levels, mean_avg);
  write_metadata(dir, s.name, params, gen, s);
  return s;
}

ExperimentSummary run_m20(const ExperimentParams& params, const std::string& dir) {
  ExperimentParams p = params;
  p.m = 20;
  GeneratorSettings gen = base_settings(p);
  gen.p_mean = 0.3;
  gen.p_sd = 0.05;
  gen.smoothness_cap = 0.001 * static_cast<double>(p.m);
  auto errs = replica_errors(p, gen, p.reps);

  std::vector<std::vector<std::string>> rows;
  double sn = 0.0, sp = 0.0;
  for (size_t i = 0; i < errs.size(); ++i) {
    rows.push_back({std::to_string(i), format_g17(errs[i].first), format_g17(errs[i].second)});
    sn += errs[i].first;
    sp += errs[i].second;
  }
  write_csv(dir + "/m20_errors.csv", {"seed_index", "err_n", "err_p"}, rows);

  ExperimentSummary s;
  s.name = "m20";
  s.files = {"m20_errors.csv"};
  double count = static_cast<double>(errs.size());
  s.values["mean_err_n"] = sn / count;
  s.values["mean_err_p"] = sp / count;
  s.values["mean_err"] = 0.5 * (sn + sp) / count;
  write_metadata(dir, s.name, p, gen, s);
  return s;
}

}  // namespace

std::vector<std::pair<double, double>> replica_errors(const ExperimentParams& params,
                                                      const GeneratorSettings& gen, long seeds) {
  std::vector<std::pair<double, double>> errs;
  errs.reserve(static_cast<size_t>(seeds));
  for (long i = 0; i < seeds; ++i) {
    Scenario sc = make_scenario(params.m, params.k, gen, derive_seed(params.base_seed, i));
    auto solved = solve_scenario(sc, params);
    errs.push_back({solved.err_n, solved.err_p});
  }
  return errs;
}

ExperimentParams default_experiment_params(const std::string& name) {
  ExperimentParams p;
  if (name == "m20") {
    p.m = 20;
    p.reps = 50;
  } else if (name == "convergence") {
    p.reps = 1;
    p.solver.stop_threshold = 1e-13;
    p.solver.outer_iters = 8000;
  }
  return p;
}

ExperimentSummary run_experiment(const std::string& name, const ExperimentParams& params,
                                 const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create output directory '" + out_dir + "'");
  if (name == "convergence") return run_convergence(params, out_dir);
  if (name == "sweep-min-count") return run_sweep_min_count(params, out_dir);
  if (name == "sweep-smoothness") return run_sweep_smoothness(params, out_dir);
  if (name == "m20") return run_m20(params, out_dir);
  fail(ErrorCode::UnknownExperiment, "unknown experiment '" + name + "'");
}

}  // namespace graud
