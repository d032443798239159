#include "gapsets/enumerate.hpp"

#include "gapsets/canonical.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace gapsets {

namespace {

struct Generator {
  int n;
  bool loops;
  bool multi;
  std::vector<int> deg;
  std::vector<Edge> edges;
  std::set<std::vector<int>> seen;
  std::vector<Multigraph> out;

  bool may_connect() const {
    // A finished component (all degrees 3) that is not the whole graph ends the branch.
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (auto [u, v] : edges) parent[find(u)] = find(v);
    std::vector<int> open(n, 0), size(n, 0);
    for (int v = 0; v < n; ++v) {
      size[find(v)] += 1;
      if (deg[v] < 3) open[find(v)] = 1;
    }
    for (int v = 0; v < n; ++v)
      if (find(v) == v && !open[v] && size[v] < n) return false;
    return true;
  }

  void run(int next_fresh) {
    int v = 0;
    while (v < n && deg[v] == 3) ++v;
    if (v == n) {
      Multigraph g(n, edges);
      if (!is_connected(g)) return;
      auto key = canonical_form(g).key;
      if (seen.insert(key).second) out.push_back(g);
      return;
    }
    int lo = (!edges.empty() && edges.back().first == v) ? edges.back().second : v;
    int hi = std::min(next_fresh, n - 1);
    for (int w = lo; w <= hi; ++w) {
      if (w == v) {
        if (!loops || deg[v] > 1) continue;
        deg[v] += 2;
        edges.emplace_back(v, v);
      } else {
        if (deg[w] >= 3) continue;
        if (!multi && !edges.empty() && edges.back() == Edge{v, w}) continue;
        deg[v] += 1;
        deg[w] += 1;
        edges.emplace_back(v, w);
      }
      if (may_connect()) run(std::max(next_fresh, w + 1));
      auto [a, b] = edges.back();
      edges.pop_back();
      if (a == b) {
        deg[a] -= 2;
      } else {
        deg[a] -= 1;
        deg[b] -= 1;
      }
    }
  }
};

}  // namespace

std::vector<Multigraph> enumerate_cubic_multigraphs(int n, bool allow_loops, bool allow_multi) {
  if (n % 2 != 0) throw std::invalid_argument("cubic graphs need an even vertex count");
  if (n < 2 || n > 12) throw std::invalid_argument("vertex count out of range [2,12]");
  Generator gen{n, allow_loops, allow_multi, std::vector<int>(n, 0), {}, {}, {}};
  gen.run(1);
  return gen.out;
}

}  // namespace gapsets
