#include "gapsets/tmap.hpp"

#include "gapsets/canonical.hpp"
#include "gapsets/dynamics.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace gapsets {

Multigraph tmap(const Multigraph& g) {
  if (!g.is_cubic() || !g.half_loops.empty()) throw std::invalid_argument("tmap needs a cubic multigraph without half-loops");
  const int m = static_cast<int>(g.edges.size());
  Multigraph t(2 * m, {}, g.name.empty() ? std::string{} : "T(" + g.name + ")");
  std::vector<std::vector<int>> darts(g.n);
  for (int e = 0; e < m; ++e) {
    darts[g.edges[e].first].push_back(2 * e);
    darts[g.edges[e].second].push_back(2 * e + 1);
    t.add_edge(2 * e, 2 * e + 1);
  }
  for (int v = 0; v < g.n; ++v) {
    const auto& d = darts[v];
    t.add_edge(d[0], d[1]);
    t.add_edge(d[0], d[2]);
    t.add_edge(d[1], d[2]);
  }
  return t;
}

Multigraph tmap_iterate(const Multigraph& g, int k) {
  Multigraph h = g;
  for (int i = 0; i < k; ++i) h = tmap(h);
  return h;
}

Spectrum tmap_spectrum_predict(const Spectrum& sigma) {
  const std::size_t n = sigma.size();
  if (n % 2 != 0) throw std::invalid_argument("spectrum size must be even");
  Spectrum out;
  out.reserve(3 * n);
  for (double l : sigma) {
    auto r = f_preimage(l);
    if (!r) throw std::invalid_argument("eigenvalue below -13/4");
    out.push_back(r->first);
    out.push_back(r->second);
  }
  out.insert(out.end(), n / 2, 0.0);
  out.insert(out.end(), n / 2, -2.0);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct TrianglePartition {
  const Multigraph& g;
  std::vector<std::vector<int>> nb;
  Eigen::MatrixXi cnt;
  std::vector<int> owner;
  std::vector<std::array<int, 3>> tris;
  std::optional<Multigraph> found;
  long budget = 200000;

  std::optional<Multigraph> contract() const {
    std::map<Edge, int> left;
    for (auto [u, v] : g.edges) left[{std::min(u, v), std::max(u, v)}] += 1;
    for (const auto& t : tris)
      for (auto [a, b] : {Edge{t[0], t[1]}, Edge{t[0], t[2]}, Edge{t[1], t[2]}}) {
        auto& c = left[{std::min(a, b), std::max(a, b)}];
        if (c == 0) return std::nullopt;
        c -= 1;
      }
    Multigraph z(static_cast<int>(tris.size()), {});
    for (auto [e, c] : left)
      for (int i = 0; i < c; ++i) z.add_edge(owner[e.first], owner[e.second]);
    if (!z.is_cubic()) return std::nullopt;
    return z;
  }

  void run() {
    if (found || --budget < 0) return;
    int v = 0;
    while (v < g.n && owner[v] >= 0) ++v;
    if (v == g.n) {
      auto z = contract();
      if (z && isomorphic(tmap(*z), g)) found = z;
      return;
    }
    for (std::size_t i = 0; i < nb[v].size(); ++i)
      for (std::size_t j = i + 1; j < nb[v].size(); ++j) {
        int a = nb[v][i], b = nb[v][j];
        if (owner[a] >= 0 || owner[b] >= 0 || cnt(a, b) == 0) continue;
        int id = static_cast<int>(tris.size());
        owner[v] = owner[a] = owner[b] = id;
        tris.push_back({v, a, b});
        run();
        tris.pop_back();
        owner[v] = owner[a] = owner[b] = -1;
        if (found) return;
      }
  }
};

}  // namespace

std::optional<Multigraph> tmap_inverse(const Multigraph& g) {
  if (!g.is_cubic() || g.n % 3 != 0 || !g.half_loops.empty()) return std::nullopt;
  TrianglePartition tp{g, g.simple_neighbors(), adjacency_counts(g), std::vector<int>(g.n, -1), {}, std::nullopt};
  tp.run();
  return tp.found;
}

}  // namespace gapsets
