#include "gapsets/families.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace gapsets {

Multigraph k4() { return Multigraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, "K4"); }

Multigraph cube() {
  Multigraph g(8, {}, "cube");
  for (int v = 0; v < 8; ++v)
    for (int b = 0; b < 3; ++b) {
      int w = v ^ (1 << b);
      if (v < w) g.add_edge(v, w);
    }
  return g;
}

Multigraph prism3() {
  return Multigraph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}}, "prism3");
}

Multigraph b1() { return Multigraph(4, {{0, 0}, {0, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 3}}, "B1"); }

Multigraph b2() { return Multigraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 1}, {2, 2}, {3, 3}}, "B2"); }

PeriodicGraph wbar_a() {
  Multigraph base(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 4}, {1, 5}, {2, 3}, {0, 2}, {5, 3}}, "Wbar_a cell");
  std::vector<Offset> off(9, Offset{0, 0});
  off[7] = {1, 0};
  off[8] = {1, 0};
  return PeriodicGraph(base, 1, off, "Wbar_a");
}

PeriodicGraph wbar_b() {
  Multigraph base(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 1}, {2, 3}}, "Wbar_b cell");
  std::vector<Offset> off(6, Offset{0, 0});
  off[4] = {1, 0};
  off[5] = {1, 0};
  return PeriodicGraph(base, 1, off, "Wbar_b");
}

Multigraph w_a(int n) {
  Multigraph g = cyclic_quotient(wbar_a(), n);
  g.name = "W_a(" + std::to_string(n) + ")";
  return g;
}

Multigraph w_b(int n) {
  Multigraph g = cyclic_quotient(wbar_b(), n);
  g.name = "W_b(" + std::to_string(n) + ")";
  return g;
}

namespace {

int wrap(int k, int m) { return ((k % m) + m) % m; }

}  // namespace

std::vector<int> sigma_o(int cells) {
  const int s[4] = {3, 2, 1, 0};
  std::vector<int> p(4 * cells);
  for (int k = 0; k < cells; ++k)
    for (int x = 0; x < 4; ++x) p[x + 4 * k] = s[x] + 4 * wrap(1 - k, cells);
  return p;
}

std::vector<int> sigma_p(int cells, int h) {
  const int pi[6] = {4, 5, -1, -1, 0, 1};
  std::vector<int> p(6 * cells);
  for (int k = 0; k < cells; ++k) {
    for (int x : {0, 1, 4, 5}) p[x + 6 * k] = pi[x] + 6 * wrap(2 * h - 1 - k, cells);
    p[2 + 6 * k] = 3 + 6 * wrap(2 * h - k, cells);
    p[3 + 6 * k] = 2 + 6 * wrap(2 * h - k, cells);
  }
  return p;
}

Multigraph p_b(int n) {
  if (n < 1) throw std::invalid_argument("P_b needs n >= 1");
  auto q = quotient_by_automorphism(w_b(2 * n), {sigma_o(2 * n)});
  q.graph.name = "P_b(" + std::to_string(n) + ")";
  return q.graph;
}

Multigraph p_a(int n) {
  if (n < 1) throw std::invalid_argument("P_a needs n >= 1");
  auto q = quotient_by_automorphism(w_a(2 * n), {sigma_p(2 * n, 0)});
  q.graph.name = "P_a(" + std::to_string(n) + ")";
  return q.graph;
}

Multigraph random_cubic_graph(int n, std::mt19937_64& rng) {
  if (n < 4 || n % 2) throw std::invalid_argument("random cubic graph needs even n >= 4");
  std::vector<int> stubs;
  for (int v = 0; v < n; ++v) stubs.insert(stubs.end(), 3, v);
  while (true) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    Multigraph g(n, {}, "random" + std::to_string(n));
    std::set<Edge> seen;
    bool ok = true;
    for (std::size_t i = 0; i < stubs.size() && ok; i += 2) {
      int u = std::min(stubs[i], stubs[i + 1]), v = std::max(stubs[i], stubs[i + 1]);
      ok = u != v && seen.insert({u, v}).second;
      g.add_edge(u, v);
    }
    if (ok && is_connected(g)) return g;
  }
}

}  // namespace gapsets
