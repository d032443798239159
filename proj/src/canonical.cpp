#include "gapsets/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace gapsets {

namespace {

using Partition = std::vector<std::vector<int>>;

struct Refiner {
  const Eigen::MatrixXi& m;
  int n;

  void refine(Partition& cells) const {
    std::vector<int> cell_of(n);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < cells.size(); ++c)
        for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
      Partition next;
      next.reserve(cells.size());
      for (const auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(cell);
          continue;
        }
        std::vector<std::pair<std::vector<int>, int>> sig;
        sig.reserve(cell.size());
        for (int v : cell) {
          std::vector<int> s(cells.size() + 1, 0);
          s[0] = m(v, v);
          for (int w = 0; w < n; ++w)
            if (w != v && m(v, w)) s[1 + cell_of[w]] += m(v, w);
          sig.emplace_back(std::move(s), v);
        }
        std::sort(sig.begin(), sig.end());
        std::size_t start = 0;
        for (std::size_t i = 1; i <= sig.size(); ++i) {
          if (i == sig.size() || sig[i].first != sig[start].first) {
            std::vector<int> part;
            for (std::size_t k = start; k < i; ++k) part.push_back(sig[k].second);
            next.push_back(std::move(part));
            start = i;
          }
        }
      }
      changed = next.size() != cells.size();
      cells = std::move(next);
    }
  }

  std::vector<int> key_for(const std::vector<int>& order) const {
    std::vector<int> key;
    key.reserve(1 + n * (n + 1) / 2);
    key.push_back(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) key.push_back(m(order[i], order[j]));
    return key;
  }
};

Partition initial_partition(const Multigraph& g, const Eigen::MatrixXi& m) {
  auto deg = g.degrees();
  std::map<std::pair<int, int>, std::vector<int>> by;
  for (int v = 0; v < g.n; ++v) by[{deg[v], m(v, v)}].push_back(v);
  Partition cells;
  for (auto& [k, vs] : by) cells.push_back(vs);
  return cells;
}

template <class Leaf>
void search(const Refiner& r, Partition cells, const Leaf& leaf) {
  r.refine(cells);
  auto it = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
  if (it == cells.end()) {
    std::vector<int> order;
    for (const auto& c : cells) order.push_back(c[0]);
    leaf(order);
    return;
  }
  std::size_t idx = static_cast<std::size_t>(it - cells.begin());
  for (int v : cells[idx]) {
    Partition child;
    child.reserve(cells.size() + 1);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c != idx) {
        child.push_back(cells[c]);
        continue;
      }
      child.push_back({v});
      std::vector<int> rest;
      for (int w : cells[c])
        if (w != v) rest.push_back(w);
      child.push_back(std::move(rest));
    }
    search(r, std::move(child), leaf);
  }
}

}  // namespace

CanonicalForm canonical_form(const Multigraph& g) {
  Eigen::MatrixXi m = adjacency_counts(g);
  Refiner r{m, g.n};
  CanonicalForm best;
  search(r, initial_partition(g, m), [&](const std::vector<int>& order) {
    auto key = r.key_for(order);
    if (best.key.empty() || key < best.key) {
      best.key = std::move(key);
      best.order = order;
    }
  });
  return best;
}

Multigraph canonical_relabel(const Multigraph& g) {
  auto cf = canonical_form(g);
  std::vector<int> pos(g.n);
  for (int i = 0; i < g.n; ++i) pos[cf.order[i]] = i;
  Multigraph h = relabel(g, pos);
  for (auto& [u, v] : h.edges)
    if (u > v) std::swap(u, v);
  std::sort(h.edges.begin(), h.edges.end());
  std::sort(h.half_loops.begin(), h.half_loops.end());
  return h;
}

bool isomorphic(const Multigraph& a, const Multigraph& b) {
  if (a.n != b.n || a.edges.size() != b.edges.size() || a.half_loops.size() != b.half_loops.size()) return false;
  auto da = a.degrees(), db = b.degrees();
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;
  return canonical_form(a).key == canonical_form(b).key;
}

std::vector<std::vector<int>> automorphisms(const Multigraph& g, std::size_t max_count) {
  Eigen::MatrixXi m = adjacency_counts(g);
  Refiner r{m, g.n};
  std::vector<int> first_order;
  std::vector<int> first_key;
  std::vector<std::vector<int>> out;
  struct Stop {};
  try {
    search(r, initial_partition(g, m), [&](const std::vector<int>& order) {
      auto key = r.key_for(order);
      if (first_order.empty()) {
        first_order = order;
        first_key = key;
      }
      if (key != first_key) return;
      std::vector<int> p(g.n);
      for (int i = 0; i < g.n; ++i) p[first_order[i]] = order[i];
      out.push_back(std::move(p));
      if (out.size() >= max_count) throw Stop{};
    });
  } catch (const Stop&) {
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace gapsets
