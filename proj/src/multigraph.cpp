#include "gapsets/multigraph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <stdexcept>

namespace gapsets {

std::vector<int> Multigraph::degrees() const {
  std::vector<int> d(n, 0);
  for (auto [u, v] : edges) {
    d[u] += 1;
    d[v] += 1;
  }
  for (int v : half_loops) d[v] += 1;
  return d;
}

bool Multigraph::is_cubic() const {
  auto d = degrees();
  return std::all_of(d.begin(), d.end(), [](int x) { return x == 3; });
}

bool Multigraph::has_loops() const {
  return !half_loops.empty() ||
         std::any_of(edges.begin(), edges.end(), [](const Edge& e) { return e.first == e.second; });
}

bool Multigraph::has_multi_edges() const {
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    if (u == v) continue;
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) return true;
  }
  return false;
}

std::vector<std::vector<int>> Multigraph::adjacency_lists() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (int v : half_loops) adj[v].push_back(v);
  return adj;
}

std::vector<std::vector<int>> Multigraph::simple_neighbors() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

Eigen::MatrixXi adjacency_counts(const Multigraph& g) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(g.n, g.n);
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) throw std::out_of_range("edge endpoint out of range");
    if (u == v) {
      a(u, u) += 2;
    } else {
      a(u, v) += 1;
      a(v, u) += 1;
    }
  }
  for (int v : g.half_loops) a(v, v) += 1;
  return a;
}

Eigen::MatrixXd adjacency_matrix(const Multigraph& g) { return adjacency_counts(g).cast<double>(); }

Spectrum symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  Spectrum s(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
  std::sort(s.begin(), s.end());
  return s;
}

Spectrum spectrum(const Multigraph& g) { return symmetric_eigenvalues(adjacency_matrix(g)); }

std::vector<int> bfs_parents(const Multigraph& g, int source) {
  auto adj = g.simple_neighbors();
  std::vector<int> parent(g.n, -2);
  std::queue<int> q;
  parent[source] = -1;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v]) {
      if (parent[w] != -2) continue;
      parent[w] = v;
      q.push(w);
    }
  }
  return parent;
}

std::vector<int> bfs_distances(const Multigraph& g, int source) {
  auto adj = g.simple_neighbors();
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v]) {
      if (dist[w] >= 0) continue;
      dist[w] = dist[v] + 1;
      q.push(w);
    }
  }
  return dist;
}

bool is_connected(const Multigraph& g) {
  if (g.n == 0) return true;
  auto d = bfs_distances(g, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::pair<int, GeodesicPath> diameter_and_geodesic(const Multigraph& g) {
  if (g.n == 0) throw std::invalid_argument("empty graph");
  int best = -1, bx = 0, by = 0;
  for (int s = 0; s < g.n; ++s) {
    auto d = bfs_distances(g, s);
    for (int t = 0; t < g.n; ++t) {
      if (d[t] < 0) throw std::invalid_argument("graph is disconnected");
      if (d[t] > best) {
        best = d[t];
        bx = s;
        by = t;
      }
    }
  }
  auto parent = bfs_parents(g, bx);
  GeodesicPath p;
  for (int v = by; v != -1; v = parent[v]) p.vertices.push_back(v);
  std::reverse(p.vertices.begin(), p.vertices.end());
  return {best, p};
}

bool is_bipartite(const Multigraph& g) {
  if (g.has_loops()) return false;
  auto adj = g.simple_neighbors();
  std::vector<int> color(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v]) {
        if (color[w] < 0) {
          color[w] = 1 - color[v];
          q.push(w);
        } else if (color[w] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

Multigraph relabel(const Multigraph& g, const std::vector<int>& perm) {
  Multigraph h(g.n, {}, g.name);
  for (auto [u, v] : g.edges) h.add_edge(perm[u], perm[v]);
  for (int v : g.half_loops) h.half_loops.push_back(perm[v]);
  return h;
}

Multigraph disjoint_union(const Multigraph& a, const Multigraph& b) {
  Multigraph h = a;
  for (auto [u, v] : b.edges) h.add_edge(u + a.n, v + a.n);
  for (int v : b.half_loops) h.half_loops.push_back(v + a.n);
  h.n = a.n + b.n;
  return h;
}

nlohmann::json to_json(const Multigraph& g) {
  nlohmann::json j;
  j["n"] = g.n;
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges) j["edges"].push_back({u, v});
  if (!g.half_loops.empty()) j["half_loops"] = g.half_loops;
  j["name"] = g.name;
  return j;
}

Multigraph graph_from_json(const nlohmann::json& j) {
  Multigraph g;
  g.n = j.at("n").get<int>();
  if (g.n <= 0) throw std::invalid_argument("graph must have at least one vertex");
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
    int u = e[0].get<int>(), v = e[1].get<int>();
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) throw std::invalid_argument("edge endpoint out of range");
    g.add_edge(u, v);
  }
  if (j.contains("half_loops")) {
    for (const auto& v : j["half_loops"]) {
      int x = v.get<int>();
      if (x < 0 || x >= g.n) throw std::invalid_argument("half-loop vertex out of range");
      g.half_loops.push_back(x);
    }
  }
  if (g.edges.empty() && g.half_loops.empty()) throw std::invalid_argument("empty edge list");
  g.name = j.value("name", std::string{});
  return g;
}

Multigraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return graph_from_json(nlohmann::json::parse(in));
}

void save_graph(const Multigraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json(g).dump() << "\n";
}

}  // namespace gapsets
