#include "gapsets/planarity.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace gapsets {

std::vector<Edge> simple_edges(const Multigraph& g) {
  std::set<Edge> s;
  for (auto [u, v] : g.edges)
    if (u != v) s.insert({std::min(u, v), std::max(u, v)});
  return {s.begin(), s.end()};
}

namespace {

std::vector<Edge> prune_pendants(std::vector<Edge> es) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<int, int> deg;
    for (auto [u, v] : es) {
      deg[u]++;
      deg[v]++;
    }
    std::vector<Edge> keep;
    for (auto e : es) {
      if (deg[e.first] == 1 || deg[e.second] == 1) {
        changed = true;
      } else {
        keep.push_back(e);
      }
    }
    es = std::move(keep);
  }
  return es;
}

std::vector<Edge> minimize_nonplanar(int n, std::vector<Edge> keep) {
  for (std::size_t i = 0; i < keep.size();) {
    std::vector<Edge> trial = keep;
    trial.erase(trial.begin() + static_cast<long>(i));
    if (!dmp_planar(n, trial)) {
      keep = std::move(trial);
    } else {
      ++i;
    }
  }
  return keep;
}

}  // namespace

PlanarityResult is_planar(const Multigraph& g) {
  using namespace boost;
  using BG = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>, property<edge_index_t, int>>;
  using ED = graph_traits<BG>::edge_descriptor;
  auto es = simple_edges(g);
  BG bg(g.n);
  for (auto [u, v] : es) add_edge(u, v, bg);
  auto eidx = get(edge_index, bg);
  int k = 0;
  graph_traits<BG>::edge_iterator ei, eend;
  for (std::tie(ei, eend) = edges(bg); ei != eend; ++ei) put(eidx, *ei, k++);

  using Storage = std::vector<std::vector<ED>>;
  Storage storage(num_vertices(bg));
  auto emb = make_iterator_property_map(storage.begin(), get(vertex_index, bg));
  std::vector<ED> kur;
  PlanarityResult r;
  r.planar = boyer_myrvold_planarity_test(boyer_myrvold_params::graph = bg, boyer_myrvold_params::embedding = emb,
                                          boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur));
  if (r.planar) {
    r.rotation.resize(g.n);
    for (int v = 0; v < g.n; ++v)
      for (const auto& e : storage[v]) {
        int a = static_cast<int>(source(e, bg)), b = static_cast<int>(target(e, bg));
        r.rotation[v].push_back(a == v ? b : a);
      }
  } else {
    std::vector<Edge> w;
    for (const auto& e : kur) w.emplace_back(static_cast<int>(source(e, bg)), static_cast<int>(target(e, bg)));
    r.kuratowski_edges = prune_pendants(w);
    r.kuratowski_kind = classify_kuratowski(r.kuratowski_edges);
    if (r.kuratowski_kind.empty()) {
      r.kuratowski_edges = minimize_nonplanar(g.n, r.kuratowski_edges);
      r.kuratowski_kind = classify_kuratowski(r.kuratowski_edges);
    }
  }
  return r;
}

namespace {

// Edge lists of the biconnected blocks of a simple graph.
std::vector<std::vector<Edge>> blocks(int n, const std::vector<Edge>& es) {
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int i = 0; i < static_cast<int>(es.size()); ++i) {
    adj[es[i].first].push_back({es[i].second, i});
    adj[es[i].second].push_back({es[i].first, i});
  }
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<Edge>> out;
  int timer = 0;
  std::function<void(int, int)> dfs = [&](int v, int pe) {
    disc[v] = low[v] = timer++;
    for (auto [w, id] : adj[v]) {
      if (id == pe) continue;
      if (disc[w] < 0) {
        stack.push_back(id);
        dfs(w, id);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) {
          std::vector<Edge> b;
          while (true) {
            int top = stack.back();
            stack.pop_back();
            b.push_back(es[top]);
            if (top == id) break;
          }
          out.push_back(std::move(b));
        }
      } else if (disc[w] < disc[v]) {
        stack.push_back(id);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (int v = 0; v < n; ++v)
    if (disc[v] < 0) dfs(v, -1);
  return out;
}

bool dmp_block(const std::vector<Edge>& es) {
  std::map<int, int> idx;
  for (auto [u, v] : es) {
    idx.emplace(u, static_cast<int>(idx.size()));
    idx.emplace(v, static_cast<int>(idx.size()));
  }
  const int n = static_cast<int>(idx.size());
  const int m = static_cast<int>(es.size());
  if (m <= 3) return true;
  if (m > 3 * n - 6) return false;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : es) {
    adj[idx[u]].push_back(idx[v]);
    adj[idx[v]].push_back(idx[u]);
  }
  std::vector<char> in_h(n, 0);
  std::set<Edge> h_edges;
  auto key = [](int a, int b) { return Edge{std::min(a, b), std::max(a, b)}; };

  // Initial cycle from a DFS back edge.
  std::vector<int> parent(n, -1), depth(n, -1);
  std::vector<int> cycle;
  std::function<bool(int)> find_cycle = [&](int v) {
    for (int w : adj[v]) {
      if (w == parent[v]) continue;
      if (depth[w] >= 0) {
        if (depth[w] < depth[v]) {
          for (int x = v; x != w; x = parent[x]) cycle.push_back(x);
          cycle.push_back(w);
          return true;
        }
        continue;
      }
      parent[w] = v;
      depth[w] = depth[v] + 1;
      if (find_cycle(w)) return true;
    }
    return false;
  };
  depth[0] = 0;
  find_cycle(0);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    in_h[cycle[i]] = 1;
    h_edges.insert(key(cycle[i], cycle[(i + 1) % cycle.size()]));
  }
  std::vector<std::vector<int>> faces{cycle, cycle};

  while (static_cast<int>(h_edges.size()) < m) {
    struct Fragment {
      std::vector<int> attach;
      std::vector<int> inner;
      int chord_a = -1, chord_b = -1;
    };
    std::vector<Fragment> frags;
    for (auto [u, v] : es) {
      int a = idx[u], b = idx[v];
      if (in_h[a] && in_h[b] && !h_edges.count(key(a, b))) frags.push_back({{a, b}, {}, a, b});
    }
    std::vector<int> comp(n, -1);
    for (int s = 0; s < n; ++s) {
      if (in_h[s] || comp[s] >= 0) continue;
      Fragment f;
      std::set<int> att;
      std::queue<int> q;
      q.push(s);
      comp[s] = s;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        f.inner.push_back(v);
        for (int w : adj[v]) {
          if (in_h[w]) {
            att.insert(w);
          } else if (comp[w] < 0) {
            comp[w] = s;
            q.push(w);
          }
        }
      }
      f.attach.assign(att.begin(), att.end());
      frags.push_back(std::move(f));
    }
    int chosen = -1, chosen_face = -1;
    for (int i = 0; i < static_cast<int>(frags.size()); ++i) {
      int count = 0, first = -1;
      for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
        std::set<int> fv(faces[fi].begin(), faces[fi].end());
        bool ok = std::all_of(frags[i].attach.begin(), frags[i].attach.end(), [&](int a) { return fv.count(a) > 0; });
        if (ok) {
          ++count;
          if (first < 0) first = fi;
        }
      }
      if (count == 0) return false;
      if (chosen < 0 || count == 1) {
        chosen = i;
        chosen_face = first;
        if (count == 1) break;
      }
    }
    const Fragment& f = frags[chosen];
    std::vector<int> path;
    if (f.chord_a >= 0) {
      path = {f.chord_a, f.chord_b};
    } else {
      int a = f.attach[0];
      std::map<int, int> prev;
      std::queue<int> q;
      int b = -1;
      for (int w : adj[a])
        if (!in_h[w] && comp[w] == comp[f.inner[0]] && !prev.count(w)) {
          prev[w] = a;
          q.push(w);
        }
      while (!q.empty() && b < 0) {
        int v = q.front();
        q.pop();
        for (int w : adj[v]) {
          if (in_h[w] && w != a) {
            prev[w] = v;
            b = w;
            break;
          }
          if (!in_h[w] && !prev.count(w)) {
            prev[w] = v;
            q.push(w);
          }
        }
      }
      if (b < 0) return false;
      for (int x = b; x != a; x = prev[x]) path.push_back(x);
      path.push_back(a);
      std::reverse(path.begin(), path.end());
    }
    const auto face = faces[chosen_face];
    const int a = path.front(), b = path.back();
    int ia = static_cast<int>(std::find(face.begin(), face.end(), a) - face.begin());
    int ib = static_cast<int>(std::find(face.begin(), face.end(), b) - face.begin());
    const int L = static_cast<int>(face.size());
    std::vector<int> f1, f2;
    for (int i = ia;; i = (i + 1) % L) {
      f1.push_back(face[i]);
      if (i == ib) break;
    }
    for (int i = static_cast<int>(path.size()) - 2; i >= 1; --i) f1.push_back(path[i]);
    for (int i = ib;; i = (i + 1) % L) {
      f2.push_back(face[i]);
      if (i == ia) break;
    }
    for (int i = 1; i + 1 < static_cast<int>(path.size()); ++i) f2.push_back(path[i]);
    faces[chosen_face] = std::move(f1);
    faces.push_back(std::move(f2));
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      in_h[path[i]] = 1;
      h_edges.insert(key(path[i], path[i + 1]));
    }
    in_h[path.back()] = 1;
  }
  return true;
}

}  // namespace

bool dmp_planar(int n, const std::vector<Edge>& es) {
  for (const auto& b : blocks(n, es))
    if (!dmp_block(b)) return false;
  return true;
}

PlanarityResult is_planar_fallback(const Multigraph& g) {
  PlanarityResult r;
  auto es = simple_edges(g);
  r.planar = dmp_planar(g.n, es);
  if (r.planar) return r;
  r.kuratowski_edges = minimize_nonplanar(g.n, es);
  r.kuratowski_kind = classify_kuratowski(r.kuratowski_edges);
  return r;
}

std::string classify_kuratowski(const std::vector<Edge>& edges) {
  std::map<int, std::vector<int>> adj;
  for (auto [u, v] : edges) {
    if (u == v) return {};
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> branch;
  for (auto& [v, nb] : adj) {
    if (nb.size() >= 3) branch.push_back(v);
    if (nb.size() < 2) return {};
  }
  std::set<int> bset(branch.begin(), branch.end());
  std::map<Edge, int> reduced;
  std::set<int> visited_inner;
  for (int b : branch)
    for (int first : adj[b]) {
      int prev = b, cur = first;
      while (!bset.count(cur)) {
        visited_inner.insert(cur);
        const auto& nb = adj[cur];
        int next = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = next;
      }
      if (cur == b) return {};
      if (b < cur) reduced[{b, cur}] += 1;
    }
  if (visited_inner.size() + bset.size() != adj.size()) return {};
  for (auto& [e, c] : reduced) {
    (void)e;
    // Each branch path is seen once from each end, recorded from the smaller.
    if (c != 1) return {};
  }
  const std::size_t nb = branch.size(), ne = reduced.size();
  std::map<int, int> deg;
  for (auto& [e, c] : reduced) {
    (void)c;
    deg[e.first]++;
    deg[e.second]++;
  }
  if (nb == 5 && ne == 10 && std::all_of(deg.begin(), deg.end(), [](auto& p) { return p.second == 4; })) return "K5";
  if (nb == 6 && ne == 9 && std::all_of(deg.begin(), deg.end(), [](auto& p) { return p.second == 3; })) {
    std::map<int, int> side;
    side[branch[0]] = 0;
    std::queue<int> q;
    q.push(branch[0]);
    std::map<int, std::vector<int>> radj;
    for (auto& [e, c] : reduced) {
      (void)c;
      radj[e.first].push_back(e.second);
      radj[e.second].push_back(e.first);
    }
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : radj[v]) {
        if (!side.count(w)) {
          side[w] = 1 - side[v];
          q.push(w);
        } else if (side[w] == side[v]) {
          return {};
        }
      }
    }
    if (side.size() != 6) return {};
    return "K33";
  }
  return {};
}

std::vector<std::vector<int>> trace_faces(const std::vector<std::vector<int>>& rotation) {
  std::set<Edge> used;
  std::vector<std::vector<int>> faces;
  for (int v = 0; v < static_cast<int>(rotation.size()); ++v)
    for (int w : rotation[v]) {
      if (used.count({v, w})) continue;
      std::vector<int> face;
      int a = v, b = w;
      while (!used.count({a, b})) {
        used.insert({a, b});
        face.push_back(a);
        const auto& rw = rotation[b];
        auto it = std::find(rw.begin(), rw.end(), a);
        if (it == rw.end()) return {};
        ++it;
        if (it == rw.end()) it = rw.begin();
        a = b;
        b = *it;
      }
      faces.push_back(std::move(face));
    }
  return faces;
}

bool verify_embedding(const Multigraph& g, const std::vector<std::vector<int>>& rotation) {
  if (static_cast<int>(rotation.size()) != g.n) return false;
  auto es = simple_edges(g);
  std::vector<std::set<int>> nb(g.n);
  for (auto [u, v] : es) {
    nb[u].insert(v);
    nb[v].insert(u);
  }
  for (int v = 0; v < g.n; ++v)
    if (std::set<int>(rotation[v].begin(), rotation[v].end()) != nb[v] || rotation[v].size() != nb[v].size()) return false;
  auto faces = trace_faces(rotation);
  std::vector<int> comp(g.n, -1);
  int ncomp = 0;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] >= 0 || nb[s].empty()) continue;
    std::queue<int> q;
    q.push(s);
    comp[s] = ncomp;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : nb[v])
        if (comp[w] < 0) {
          comp[w] = ncomp;
          q.push(w);
        }
    }
    ++ncomp;
  }
  std::vector<long> vc(ncomp, 0), ec(ncomp, 0), fc(ncomp, 0);
  for (int v = 0; v < g.n; ++v)
    if (comp[v] >= 0) vc[comp[v]]++;
  for (auto [u, v] : es) ec[comp[u]]++;
  for (const auto& f : faces) fc[comp[f[0]]]++;
  for (int c = 0; c < ncomp; ++c)
    if (vc[c] - ec[c] + fc[c] != 2) return false;
  return true;
}

}  // namespace gapsets
