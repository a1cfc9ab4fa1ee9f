#include "io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace graud {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool parse_long(const std::string& s, long& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::ifstream open_or_fail(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  return in;
}

}  // namespace

EdgeListFile read_edge_list(const std::string& path) {
  auto in = open_or_fail(path);
  EdgeListFile out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ss(t);
    std::string first;
    ss >> first;
    if (first == "nodes") {
      long m = 0;
      std::string rest;
      ss >> rest;
      if (!parse_long(rest, m) || m < 1)
        fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": bad node count header");
      out.declared_nodes = static_cast<int>(m);
      continue;
    }
    std::string second;
    ss >> second;
    long i = 0, j = 0;
    std::string extra;
    if (!parse_long(first, i) || !parse_long(second, j) || (ss >> extra))
      fail(ErrorCode::Parse,
           path + ":" + std::to_string(lineno) + ": expected two integer endpoints");
    out.edges.push_back({static_cast<int>(i), static_cast<int>(j)});
  }
  return out;
}

CountsFile read_counts_csv(const std::string& path) {
  auto in = open_or_fail(path);
  CountsFile out;
  std::string line;
  int lineno = 0;
  bool first_line = true;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    auto cells = split_csv(t);
    if (first_line) {
      first_line = false;
      double probe;
      if (!parse_double(cells[0], probe)) continue;  // header row
    }
    if (cells.size() != 2)
      fail(ErrorCode::Parse,
           path + ":" + std::to_string(lineno) + ": expected two columns node,y");
    long node = 0;
    double y = 0.0;
    if (!parse_long(cells[0], node))
      fail(ErrorCode::Parse,
           path + ":" + std::to_string(lineno) + ": column 1 is not an integer node id");
    if (!parse_double(cells[1], y))
      fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": column 2 is not numeric");
    out.nodes.push_back(node);
    out.values.push_back(y);
  }
  if (out.nodes.empty()) fail(ErrorCode::Parse, path + ": no count rows");
  return out;
}

Eigen::MatrixXd read_features_csv(const std::string& path) {
  auto in = open_or_fail(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  bool first_line = true;
  size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    auto cells = split_csv(t);
    if (first_line) {
      first_line = false;
      double probe;
      if (!parse_double(cells[0], probe)) continue;  // header row
    }
    std::vector<double> row;
    for (size_t c = 0; c < cells.size(); ++c) {
      double x;
      if (!parse_double(cells[c], x))
        fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": cell " +
                                   std::to_string(c + 1) + " is not numeric");
      row.push_back(x);
    }
    if (width == 0) width = row.size();
    if (row.size() != width)
      fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": expected " +
                                 std::to_string(width) + " columns, found " +
                                 std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::Parse, path + ": no feature rows");
  Eigen::MatrixXd X(rows.size(), width);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t k = 0; k < width; ++k) X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  return X;
}

LoadedInstance load_instance(const std::string& edges_path, const std::string& counts_path,
                             const std::string& features_path, int node_count_override,
                             bool standardize_features) {
  EdgeListFile ef = read_edge_list(edges_path);
  CountsFile cf = read_counts_csv(counts_path);
  Eigen::MatrixXd X = read_features_csv(features_path);

  int M = node_count_override > 0 ? node_count_override
          : ef.declared_nodes > 0 ? ef.declared_nodes
                                  : static_cast<int>(cf.nodes.size());

  std::vector<int> seen(M, 0);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(M);
  for (size_t r = 0; r < cf.nodes.size(); ++r) {
    long node = cf.nodes[r];
    if (node < 0 || node >= M)
      fail(ErrorCode::Parse, counts_path + ": node id " + std::to_string(node) +
                                 " outside [0," + std::to_string(M) + ")");
    if (seen[node]++)
      fail(ErrorCode::DuplicateNode, counts_path + ": node " + std::to_string(node) +
                                         " appears more than once");
    y[node] = cf.values[r];
  }
  for (int i = 0; i < M; ++i)
    if (!seen[i]) fail(ErrorCode::MissingNode, counts_path + ": node " + std::to_string(i) +
                                                   " has no count row");
  if (X.rows() != M)
    fail(ErrorCode::DimensionMismatch, features_path + ": " + std::to_string(X.rows()) +
                                           " rows for " + std::to_string(M) + " nodes");

  if (standardize_features) {
    for (Eigen::Index k = 0; k < X.cols(); ++k) {
      double mean = X.col(k).mean();
      double var = (X.col(k).array() - mean).square().sum() / static_cast<double>(X.rows());
      double sd = std::sqrt(var);
      if (sd <= 1e-12 * std::max(1.0, std::abs(mean))) continue;  // constant column stays as-is
      X.col(k) = (X.col(k).array() - mean) / sd;
    }
  }

  LoadedInstance li;
  li.graph = build_graph(M, ef.edges);
  li.y = y;
  li.X = X;
  return li;
}

nlohmann::json scenario_to_json(const Scenario& sc) {
  nlohmann::json j;
  j["node_count"] = sc.graph.node_count;
  auto edges = nlohmann::json::array();
  for (auto [a, b] : sc.graph.edges) edges.push_back({a, b});
  j["edges"] = edges;
  auto mat = nlohmann::json::array();
  for (Eigen::Index i = 0; i < sc.X.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < sc.X.cols(); ++k) row.push_back(sc.X(i, k));
    mat.push_back(row);
  }
  j["features"] = mat;
  j["beta0"] = std::vector<double>(sc.beta0.data(), sc.beta0.data() + sc.beta0.size());
  std::vector<long long> n0(sc.n0.size()), y(sc.y.size());
  for (Eigen::Index i = 0; i < sc.n0.size(); ++i) n0[i] = static_cast<long long>(std::llround(sc.n0[i]));
  for (Eigen::Index i = 0; i < sc.y.size(); ++i) y[i] = static_cast<long long>(std::llround(sc.y[i]));
  j["n0"] = n0;
  j["y"] = y;
  j["p0"] = std::vector<double>(sc.p0.data(), sc.p0.data() + sc.p0.size());
  j["seed"] = sc.seed;
  j["prob_attempts"] = sc.prob_attempts;
  j["generator"] = {
      {"p_mean", sc.settings.p_mean},
      {"p_sd", sc.settings.p_sd},
      {"clip_lo", sc.settings.clip_lo},
      {"clip_hi", sc.settings.clip_hi},
      {"smoothness_cap", sc.settings.smoothness_cap},
      {"min_count", sc.settings.min_count},
      {"sigma_n", sc.settings.sigma_n},
      {"family", graph_family_name(sc.settings.family)},
      {"max_attempts", sc.settings.max_attempts},
  };
  j["diagnostics"] = {
      {"n0_quad_h", sc.n0_quad_h},
      {"u0_quad_h", sc.u0_quad_h},
      {"p0_quad_l", sc.p0_quad_l},
      {"v0_quad_l", sc.v0_quad_l},
  };
  return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
  try {
    Scenario sc;
    int M = j.at("node_count").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    sc.graph = build_graph(M, edges);

    const auto& mat = j.at("features");
    int K = mat.empty() ? 0 : static_cast<int>(mat.at(0).size());
    sc.X.resize(M, K);
    for (int i = 0; i < M; ++i)
      for (int k = 0; k < K; ++k) sc.X(i, k) = mat.at(i).at(k).get<double>();

    auto vec = [&](const char* key) {
      auto v = j.at(key).get<std::vector<double>>();
      return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())).eval();
    };
    sc.beta0 = vec("beta0");
    sc.n0 = vec("n0");
    sc.p0 = vec("p0");
    sc.y = vec("y");
    sc.seed = j.at("seed").get<std::uint64_t>();
    sc.prob_attempts = j.value("prob_attempts", 0L);

    const auto& g = j.at("generator");
    sc.settings.p_mean = g.at("p_mean").get<double>();
    sc.settings.p_sd = g.at("p_sd").get<double>();
    sc.settings.clip_lo = g.at("clip_lo").get<double>();
    sc.settings.clip_hi = g.at("clip_hi").get<double>();
    sc.settings.smoothness_cap = g.at("smoothness_cap").get<double>();
    sc.settings.min_count = g.at("min_count").get<long>();
    sc.settings.sigma_n = g.at("sigma_n").get<double>();
    sc.settings.family = graph_family_from_name(g.at("family").get<std::string>());
    sc.settings.max_attempts = g.at("max_attempts").get<long>();

    const auto& d = j.at("diagnostics");
    sc.n0_quad_h = d.at("n0_quad_h").get<double>();
    sc.u0_quad_h = d.at("u0_quad_h").get<double>();
    sc.p0_quad_l = d.at("p0_quad_l").get<double>();
    sc.v0_quad_l = d.at("v0_quad_l").get<double>();

    if (sc.n0.size() != M || sc.p0.size() != M || sc.y.size() != M)
      fail(ErrorCode::Parse, "scenario arrays do not match node_count");
    return sc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Parse, std::string("bad scenario document: ") + e.what());
  }
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write '" + path + "'");
  out << content;
  if (!out) fail(ErrorCode::Io, "write failed for '" + path + "'");
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << "\n";
  }
  write_text_file(path, out.str());
}

}  // namespace graud
