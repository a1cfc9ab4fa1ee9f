// End-to-end checks that shell out to the command line tool. The binary path
// arrives in GRAUD_CLI and the fixture directory in GRAUD_FIXTURES.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string cli() {
  const char* p = std::getenv("GRAUD_CLI");
  REQUIRE(p != nullptr);
  return p;
}

std::string fixture(const std::string& name) {
  const char* p = std::getenv("GRAUD_FIXTURES");
  REQUIRE(p != nullptr);
  return std::string(p) + "/" + name;
}

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + cli() + " " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, got);
  int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() /
          ("graud_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
};

std::string solve_args() {
  return "solve --edges " + fixture("edges.txt") + " --counts " + fixture("counts.csv") +
         " --features " + fixture("features.csv");
}

}  // namespace

TEST_CASE("solve emits a full report and exit code 0") {
  auto r = run(solve_args() + " --outer 800");
  REQUIRE(r.exit_code == 0);
  json rep = json::parse(r.output);
  CHECK(rep.at("format_version") == 1);
  CHECK(rep.at("assumptions").at("identifiable") == true);
  CHECK(rep.at("assumptions").at("connected") == true);
  CHECK(rep.at("solution").at("u").size() == 6);
  CHECK(rep.at("solution").at("p_hat").size() == 6);
  CHECK(rep.at("config").at("lambda2") == 0.9);
  CHECK(rep.at("timing").at("seconds").get<double>() >= 0.0);

  // trace decays and the exponentials match
  auto trace = rep.at("loss_trace").get<std::vector<double>>();
  REQUIRE(trace.size() >= 2);
  CHECK(trace.back() <= trace.front());
  double u0 = rep.at("solution").at("u").at(0).get<double>();
  double n0 = rep.at("solution").at("n_hat").at(0).get<double>();
  CHECK(n0 == doctest::Approx(std::exp(u0)).epsilon(1e-12));

  // estimates respect the box: n_hat >= y, p_hat <= 1
  auto p_hat = rep.at("solution").at("p_hat").get<std::vector<double>>();
  for (double p : p_hat) CHECK(p <= 1.0 + 1e-12);
}

TEST_CASE("solve writes the report to a file on request") {
  TempDir tmp;
  auto out = (tmp.dir / "report.json").string();
  auto r = run(solve_args() + " --outer 50 --out " + out);
  REQUIRE(r.exit_code == 0);
  std::ifstream in(out);
  REQUIRE(in.good());
  json rep = json::parse(in);
  CHECK(rep.at("solution").at("v").size() == 6);
}

TEST_CASE("identifiability failures exit 3, --force overrides for solve") {
  auto check_bad = run("check --edges " + fixture("edges.txt") + " --features " +
                       fixture("features_ones.csv"));
  CHECK(check_bad.exit_code == 3);
  json rep = json::parse(check_bad.output);
  CHECK(rep.at("assumptions").at("identifiable") == false);

  auto solve_bad = run("solve --edges " + fixture("edges.txt") + " --counts " +
                       fixture("counts.csv") + " --features " + fixture("features_ones.csv") +
                       " --outer 50");
  CHECK(solve_bad.exit_code == 3);

  auto forced = run("solve --edges " + fixture("edges.txt") + " --counts " +
                    fixture("counts.csv") + " --features " + fixture("features_ones.csv") +
                    " --outer 50 --force");
  CHECK(forced.exit_code == 0);

  auto check_good = run("check --edges " + fixture("edges.txt") + " --features " +
                        fixture("features.csv"));
  CHECK(check_good.exit_code == 0);
}

TEST_CASE("input problems exit 2") {
  CHECK(run("solve --edges /no/such/file --counts " + fixture("counts.csv") + " --features " +
            fixture("features.csv"))
            .exit_code == 2);
  CHECK(run("solve --edges " + fixture("edges_selfloop.txt") + " --counts " +
            fixture("counts.csv") + " --features " + fixture("features.csv"))
            .exit_code == 2);
  CHECK(run("solve --edges " + fixture("edges.txt") + " --counts " + fixture("counts_dup.csv") +
            " --features " + fixture("features.csv"))
            .exit_code == 2);
  CHECK(run("solve --edges " + fixture("edges.txt") + " --counts " +
            fixture("counts_zero.csv") + " --features " + fixture("features.csv"))
            .exit_code == 2);
  CHECK(run("solve").exit_code == 2);              // missing required options
  CHECK(run("frobnicate").exit_code == 2);         // unknown subcommand
  CHECK(run("").exit_code == 2);                   // subcommand required
  CHECK(run("experiment nonesuch --out-dir /tmp/graud_nonesuch").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("a zero count solves once a pseudocount is supplied") {
  auto r = run("solve --edges " + fixture("edges.txt") + " --counts " +
               fixture("counts_zero.csv") + " --features " + fixture("features.csv") +
               " --pseudocount 0.5 --outer 50");
  CHECK(r.exit_code == 0);
}

TEST_CASE("numerical blowups exit 4") {
  auto r = run(solve_args() + " --step 1.5 --no-project");
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("diverged_loss") != std::string::npos);
}

TEST_CASE("simulate is deterministic in the seed and emits companion files") {
  TempDir tmp;
  auto a = run("simulate --m 8 --k 2 --seed 5");
  auto b = run("simulate --m 8 --k 2 --seed 5");
  auto c = run("simulate --m 8 --k 2 --seed 6");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output != c.output);
  json sc = json::parse(a.output);
  CHECK(sc.at("node_count") == 8);
  CHECK(sc.at("y").size() == 8);

  auto files = (tmp.dir / "emit").string();
  auto r = run("simulate --m 8 --k 2 --seed 5 --out " + (tmp.dir / "scn.json").string() +
               " --emit-files " + files);
  REQUIRE(r.exit_code == 0);
  for (const char* name : {"edges.txt", "counts.csv", "features.csv", "truth.json"})
    CHECK(std::filesystem::exists(tmp.dir / "emit" / name));

  // the emitted instance solves, and truth scoring appears in the report
  auto solved = run("solve --edges " + files + "/edges.txt --counts " + files +
                    "/counts.csv --features " + files + "/features.csv --pseudocount 0.5" +
                    " --truth " + files + "/truth.json --outer 400");
  REQUIRE(solved.exit_code == 0);
  json rep = json::parse(solved.output);
  CHECK(rep.at("errors").at("relative_l1_n").get<double>() >= 0.0);
  CHECK(rep.at("errors").at("relative_l1_p").get<double>() >= 0.0);
}

TEST_CASE("the seed environment variable fills in when no flag is given") {
  auto flagged = run("simulate --m 6 --k 2 --seed 7");
  auto env = run("simulate --m 6 --k 2", "GRAUD_SEED=7 ");
  auto other = run("simulate --m 6 --k 2", "GRAUD_SEED=8 ");
  REQUIRE(flagged.exit_code == 0);
  REQUIRE(env.exit_code == 0);
  CHECK(flagged.output == env.output);
  CHECK(env.output != other.output);

  // explicit flag beats the environment
  auto both = run("simulate --m 6 --k 2 --seed 7", "GRAUD_SEED=9 ");
  CHECK(both.output == flagged.output);

  auto junk = run("simulate --m 6 --k 2", "GRAUD_SEED=pony ");
  CHECK(junk.exit_code == 2);
}

TEST_CASE("cross validation picks from the grids and writes the score table") {
  TempDir tmp;
  auto scores = (tmp.dir / "scores.csv").string();
  auto r = run("cv --edges " + fixture("edges.txt") + " --counts " + fixture("counts.csv") +
               " --features " + fixture("features.csv") +
               " --lambda1-grid 0.01,0.1 --lambda2-grid 0.9 --folds 3 --seed 2 --outer 200" +
               " --scores " + scores);
  REQUIRE(r.exit_code == 0);
  json rep = json::parse(r.output);
  double l1 = rep.at("lambda1").get<double>();
  CHECK((l1 == 0.01 || l1 == 0.1));
  CHECK(rep.at("lambda2") == 0.9);

  std::ifstream in(scores);
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);
  CHECK(line == "lambda1,lambda2,fold,score");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2 * 1 * 3);

  auto bad = run("cv --edges " + fixture("edges.txt") + " --counts " + fixture("counts.csv") +
                 " --features " + fixture("features.csv") + " --folds 40");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("config file supplies defaults and flags override it") {
  TempDir tmp;
  auto cfg = (tmp.dir / "cfg.json").string();
  {
    std::ofstream out(cfg);
    out << R"({"lambda1": 0.5, "outer": 60, "pseudocount": 0.25})";
  }
  auto r = run(solve_args() + " --config " + cfg);
  REQUIRE(r.exit_code == 0);
  json rep = json::parse(r.output);
  CHECK(rep.at("config").at("lambda1") == 0.5);
  CHECK(rep.at("config").at("pseudocount") == 0.25);
  CHECK(rep.at("config").at("solver").at("outer_iters") == 60);

  auto over = run(solve_args() + " --config " + cfg + " --lambda1 0.2");
  json rep2 = json::parse(over.output);
  CHECK(rep2.at("config").at("lambda1") == 0.2);

  auto missing = run(solve_args() + " --config /no/such/config.json");
  CHECK(missing.exit_code == 2);

  auto invalid = (tmp.dir / "bad.json").string();
  {
    std::ofstream out(invalid);
    out << "[1,2,3]";
  }
  CHECK(run(solve_args() + " --config " + invalid).exit_code == 2);
}

TEST_CASE("experiment subcommand writes its data files and a summary") {
  TempDir tmp;
  auto dir = (tmp.dir / "conv").string();
  auto r = run("experiment convergence --out-dir " + dir + " --seed 3");
  REQUIRE(r.exit_code == 0);
  json summary = json::parse(r.output);
  CHECK(summary.at("experiment") == "convergence");
  CHECK(summary.at("summary").at("terminal_gap").get<double>() >= 0.0);
  CHECK(std::filesystem::exists(tmp.dir / "conv" / "convergence.csv"));
  CHECK(std::filesystem::exists(tmp.dir / "conv" / "metadata.json"));

  std::ifstream meta(tmp.dir / "conv" / "metadata.json");
  json m = json::parse(meta);
  CHECK(m.at("params").at("base_seed") == 3);
}
