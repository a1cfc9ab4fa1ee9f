#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "graph.hpp"
#include "synth.hpp"

namespace graud {

// Edge list: one "i j" pair per line, '#' comments, optional "nodes M" header.
struct EdgeListFile {
  int declared_nodes = -1;  // -1 when no header line
  std::vector<std::pair<int, int>> edges;
};

EdgeListFile read_edge_list(const std::string& path);

// Counts CSV: columns node,y; optional header (first line non-numeric).
struct CountsFile {
  std::vector<long> nodes;
  std::vector<double> values;
};

CountsFile read_counts_csv(const std::string& path);

// Features CSV: M rows, K numeric columns, optional header.
Eigen::MatrixXd read_features_csv(const std::string& path);

struct LoadedInstance {
  Graph graph;
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
};

// Composes the three readers, resolves the node count (explicit override beats
// the edge-file header, which beats the counts-row count), validates that the
// counts cover nodes 0..M-1 exactly once, and optionally standardizes feature
// columns to mean 0 / variance 1 (constant columns left untouched).
LoadedInstance load_instance(const std::string& edges_path, const std::string& counts_path,
                             const std::string& features_path, int node_count_override = -1,
                             bool standardize_features = false);

nlohmann::json scenario_to_json(const Scenario& sc);
Scenario scenario_from_json(const nlohmann::json& j);

// %.17g, round-trip safe for CSV output.
std::string format_g17(double x);

void write_text_file(const std::string& path, const std::string& content);

// Rows of already formatted cells; the writer only joins and emits.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace graud
