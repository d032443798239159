#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace gapsets {

using Edge = std::pair<int, int>;

// Undirected multigraph. A loop (v,v) adds 2 to deg(v) and to A(v,v);
// a half-loop adds 1 to both (it arises when an involution flips an edge).
struct Multigraph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<int> half_loops;
  std::string name;

  Multigraph() = default;
  Multigraph(int n_, std::vector<Edge> e, std::string nm = {})
      : n(n_), edges(std::move(e)), name(std::move(nm)) {}

  void add_edge(int u, int v) { edges.emplace_back(u, v); }
  std::vector<int> degrees() const;
  bool is_cubic() const;
  bool has_loops() const;
  bool has_multi_edges() const;
  // Neighbor lists with multiplicity; a loop lists v twice, a half-loop once.
  std::vector<std::vector<int>> adjacency_lists() const;
  // Neighbor lists without loops or repeated entries.
  std::vector<std::vector<int>> simple_neighbors() const;
};

using Spectrum = std::vector<double>;

struct GeodesicPath {
  std::vector<int> vertices;
  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

Eigen::MatrixXd adjacency_matrix(const Multigraph& g);
Eigen::MatrixXi adjacency_counts(const Multigraph& g);
Spectrum spectrum(const Multigraph& g);
Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& a);

bool is_connected(const Multigraph& g);
std::vector<int> bfs_distances(const Multigraph& g, int source);
std::vector<int> bfs_parents(const Multigraph& g, int source);
std::pair<int, GeodesicPath> diameter_and_geodesic(const Multigraph& g);
bool is_bipartite(const Multigraph& g);

Multigraph relabel(const Multigraph& g, const std::vector<int>& perm);
Multigraph disjoint_union(const Multigraph& a, const Multigraph& b);

nlohmann::json to_json(const Multigraph& g);
Multigraph graph_from_json(const nlohmann::json& j);
Multigraph load_graph(const std::string& path);
void save_graph(const Multigraph& g, const std::string& path);

}  // namespace gapsets
