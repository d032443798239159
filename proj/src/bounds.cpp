#include "gapsets/bounds.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace gapsets {

std::complex<double> wave_root(double lambda) {
  if (std::abs(lambda) > 2.0) throw std::invalid_argument("|lambda| > 2");
  return {lambda / 2.0, std::sqrt(std::max(0.0, 4.0 - lambda * lambda)) / 2.0};
}

std::vector<std::complex<double>> TestFunction::values(int n) const {
  std::vector<std::complex<double>> f(n, 0.0);
  std::complex<double> p = w;
  for (int v : support) {
    f[v] = p;
    p *= w;
  }
  return f;
}

std::vector<double> residuals(const Multigraph& g, const TestFunction& tf) {
  auto f = tf.values(g.n);
  auto adj = g.adjacency_lists();
  std::vector<double> r(g.n);
  for (int v = 0; v < g.n; ++v) {
    std::complex<double> s = -tf.lambda * f[v];
    for (int u : adj[v]) s += f[u];
    r[v] = std::abs(s);
  }
  return r;
}

bool is_hamilton_path(const Multigraph& g, const std::vector<int>& path) {
  if (static_cast<int>(path.size()) != g.n) return false;
  std::vector<char> seen(g.n, 0);
  for (int v : path) {
    if (v < 0 || v >= g.n || seen[v]) return false;
    seen[v] = 1;
  }
  auto nb = g.simple_neighbors();
  for (std::size_t i = 1; i < path.size(); ++i)
    if (!std::binary_search(nb[path[i - 1]].begin(), nb[path[i - 1]].end(), path[i])) return false;
  return true;
}

namespace {

// Hamilton path on a small local graph with optional fixed ends (-1 = free).
struct HamSearch {
  const std::vector<std::vector<int>>& adj;
  int end;
  long budget;
  std::vector<int> path;
  std::vector<char> used;

  bool dfs(int v) {
    if (--budget < 0) return false;
    const int n = static_cast<int>(adj.size());
    if (static_cast<int>(path.size()) == n) return end < 0 || v == end;
    std::vector<std::pair<int, int>> cand;
    for (int u : adj[v]) {
      if (used[u]) continue;
      if (u == end && static_cast<int>(path.size()) != n - 1) continue;
      int c = 0;
      for (int x : adj[u]) c += !used[x];
      cand.push_back({c, u});
    }
    std::sort(cand.begin(), cand.end());
    for (auto [c, u] : cand) {
      used[u] = 1;
      path.push_back(u);
      if (dfs(u)) return true;
      path.pop_back();
      used[u] = 0;
      if (budget < 0) return false;
    }
    return false;
  }
};

std::optional<std::vector<int>> local_hamilton_path(const std::vector<std::vector<int>>& adj, int start, int end,
                                                    long budget) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return std::nullopt;
  if (n == 1) {
    if ((start >= 0 && start != 0) || (end >= 0 && end != 0)) return std::nullopt;
    return std::vector<int>{0};
  }
  HamSearch s{adj, end, budget, {}, std::vector<char>(n, 0)};
  std::vector<int> starts;
  if (start >= 0) {
    starts.push_back(start);
  } else {
    for (int v = 0; v < n; ++v) starts.push_back(v);
    std::sort(starts.begin(), starts.end(), [&](int a, int b) { return adj[a].size() < adj[b].size(); });
  }
  for (int s0 : starts) {
    if (s0 == end) continue;
    s.path = {s0};
    std::fill(s.used.begin(), s.used.end(), 0);
    s.used[s0] = 1;
    if (s.dfs(s0)) return s.path;
    if (s.budget < 0) return std::nullopt;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> induced(const std::vector<std::vector<int>>& nb, const std::vector<int>& verts) {
  std::map<int, int> idx;
  for (std::size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> adj(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (int u : nb[verts[i]]) {
      auto it = idx.find(u);
      if (it != idx.end()) adj[i].push_back(it->second);
    }
  return adj;
}

}  // namespace

std::optional<std::vector<int>> find_hamilton_path(const Multigraph& g, long budget) {
  std::vector<int> verts(g.n);
  for (int v = 0; v < g.n; ++v) verts[v] = v;
  return local_hamilton_path(induced(g.simple_neighbors(), verts), -1, -1, budget);
}

RayleighReport hampath_bound(const Multigraph& x, double lambda, const std::vector<int>& path) {
  if (!is_hamilton_path(x, path)) throw std::invalid_argument("not a Hamilton path");
  TestFunction tf{path, wave_root(lambda), lambda};
  RayleighReport r;
  r.residuals = residuals(x, tf);
  double s = 0.0;
  for (double v : r.residuals) s += v * v;
  r.rayleigh = s / x.n;
  r.bound = 1.0 + 16.0 / x.n;
  r.distance_bound = std::sqrt(r.rayleigh);
  r.holds = r.rayleigh <= r.bound + 1e-12;
  return r;
}

std::optional<AttachKind> attach_kind(const std::vector<int>& p) {
  if (p.size() == 1) return AttachKind::A;
  if (p.size() == 2) {
    if (p[1] - p[0] == 2) return AttachKind::B;
    if (p[1] - p[0] == 1) return AttachKind::C;
    return std::nullopt;
  }
  if (p.size() == 3 && p[1] == p[0] + 1 && p[2] == p[1] + 1) return AttachKind::D;
  return std::nullopt;
}

double length_scale(const Multigraph& x) { return std::log2(x.n / 3.0); }

std::string segment_type_name(int type) {
  static const char* names[] = {"?", "I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII"};
  return (type >= 1 && type <= 12) ? names[type] : "?";
}

namespace {

constexpr int kAccountingGrid = 41;

struct Cluster {
  int lo = 0;
  int hi = 0;
  std::set<int> extra;
};

struct Layout {
  std::vector<Segment> segs;
  std::vector<int> seg_of;  // -1 outside N_t
  std::vector<int> path;
};

char kind_char(const std::optional<AttachKind>& k) {
  if (!k) return 'o';
  return "abcd"[static_cast<int>(*k)];
}

struct ExtraInfo {
  char kind;   // a, b, c, d, or o when not attached to the geodesic
  int offset;  // first attachment position relative to the segment start, -1 for o
};

// Segment signature: geodesic run length, then kind@offset of each extra vertex.
std::string signature_of(int run, std::vector<ExtraInfo> info) {
  std::sort(info.begin(), info.end(), [](const ExtraInfo& a, const ExtraInfo& b) {
    return std::tie(a.offset, a.kind) < std::tie(b.offset, b.kind);
  });
  std::string s = std::to_string(run) + ":";
  for (std::size_t i = 0; i < info.size(); ++i) {
    if (i) s += ",";
    s += info[i].kind;
    if (info[i].offset >= 0) s += "@" + std::to_string(info[i].offset);
  }
  return s;
}

// Reconstructed segment table, scanned from type I down; 0 when no row matches.
//   I     one (d) vertex, run 3
//   II    one (c) vertex, run 2
//   III   one (c) vertex at the left end of a run of 3
//   IV    one (c) vertex at the right end of a run of 3
//   V     one (c) vertex, run 4
//   VI    one (d) vertex, run 4 or 5
//   VII   two (c) vertices, run 4
//   VIII  two (c) vertices, run 5
//   IX    (c) and (d) vertices together, run at most 8
//   X     three or more (c)/(d) vertices, no absorbed vertex
//   XI    any of the above plus absorbed (a), (b) or unattached vertices
//   XII   plain geodesic run
int classify(int run, const std::vector<ExtraInfo>& info) {
  int c = 0, d = 0, other = 0, c_off = -1;
  for (const auto& e : info) {
    if (e.kind == 'c') {
      ++c;
      c_off = e.offset;
    } else if (e.kind == 'd') {
      ++d;
    } else {
      ++other;
    }
  }
  if (info.empty()) return 12;
  if (other > 0) return c + d > 0 ? 11 : 0;
  if (d == 1 && c == 0 && run == 3) return 1;
  if (c == 1 && d == 0 && run == 2) return 2;
  if (c == 1 && d == 0 && run == 3) return c_off == 0 ? 3 : 4;
  if (c == 1 && d == 0 && run == 4) return 5;
  if (d == 1 && c == 0 && (run == 4 || run == 5)) return 6;
  if (c == 2 && d == 0 && run == 4) return 7;
  if (c == 2 && d == 0 && run == 5) return 8;
  if (c >= 1 && d >= 1 && c + d == 2 && run <= 8) return 9;
  if (c + d >= 3) return 10;
  return 0;
}

}  // namespace

SegmentDecomposition decompose_along(const Multigraph& x, const std::vector<int>& g) {
  SegmentDecomposition out;
  out.geodesic = g;
  const int t = static_cast<int>(g.size()) - 1;
  const int n = x.n;
  auto fail = [&](const std::string& why) {
    out.ok = false;
    out.failure = why;
    return out;
  };
  if (t < 0) return fail("empty geodesic");
  std::vector<int> pos(n, -1);
  for (int i = 0; i <= t; ++i) pos[g[i]] = i;
  auto nb = x.simple_neighbors();
  for (int i = 1; i <= t; ++i)
    if (!std::binary_search(nb[g[i - 1]].begin(), nb[g[i - 1]].end(), g[i])) return fail("geodesic is not a path");

  std::vector<std::vector<int>> att(n);
  std::vector<std::optional<AttachKind>> kind(n);
  std::vector<Cluster> clusters;
  for (int u = 0; u < n; ++u) {
    if (pos[u] >= 0) continue;
    for (int v : nb[u])
      if (pos[v] >= 0) att[u].push_back(pos[v]);
    std::sort(att[u].begin(), att[u].end());
    if (att[u].empty()) continue;
    kind[u] = attach_kind(att[u]);
    if (!kind[u]) {
      std::ostringstream os;
      os << "vertex " << u << " attaches to geodesic positions";
      for (int p : att[u]) os << " " << p;
      os << ", which is not geodesic";
      return fail(os.str());
    }
    if (*kind[u] == AttachKind::C || *kind[u] == AttachKind::D) clusters.push_back({att[u].front(), att[u].back(), {u}});
  }

  std::vector<double> grid(kAccountingGrid);
  for (int i = 0; i < kAccountingGrid; ++i) grid[i] = -kSqrt2 + 2.0 * kSqrt2 * i / (kAccountingGrid - 1);

  const int max_iter = 40 * n + 100;
  for (int iter = 0; iter < max_iter; ++iter) {
    // Close ranges over the attachments of their extras and merge overlapping clusters.
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& c : clusters)
        for (int u : c.extra)
          for (int p : att[u]) {
            c.lo = std::min(c.lo, p);
            c.hi = std::max(c.hi, p);
          }
      std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) { return a.lo < b.lo; });
      std::vector<Cluster> merged;
      for (auto& c : clusters) {
        if (!merged.empty() && c.lo <= merged.back().hi) {
          merged.back().hi = std::max(merged.back().hi, c.hi);
          merged.back().extra.insert(c.extra.begin(), c.extra.end());
          changed = true;
        } else {
          merged.push_back(c);
        }
      }
      clusters = std::move(merged);
    }

    // Hamilton path through every cluster; grow the range when none exists.
    bool grown = false;
    std::vector<std::vector<int>> cpaths(clusters.size());
    for (std::size_t ci = 0; ci < clusters.size() && !grown; ++ci) {
      auto& c = clusters[ci];
      auto try_range = [&](int lo, int hi) -> std::optional<std::vector<int>> {
        std::vector<int> verts;
        for (int i = lo; i <= hi; ++i) verts.push_back(g[i]);
        verts.insert(verts.end(), c.extra.begin(), c.extra.end());
        int start = lo == 0 ? -1 : 0;
        int end = hi == t ? -1 : hi - lo;
        auto p = local_hamilton_path(induced(nb, verts), start, end, 200000);
        if (!p) return std::nullopt;
        for (int& v : *p) v = verts[v];
        return p;
      };
      if (auto p = try_range(c.lo, c.hi)) {
        cpaths[ci] = *p;
        continue;
      }
      if (c.lo == 0 && c.hi == t) {
        std::ostringstream os;
        os << "no Hamilton path through the closure of the whole geodesic with " << c.extra.size() << " extra vertices";
        return fail(os.str());
      }
      bool found = false;
      for (int grow = 1; grow <= 2 && !found; ++grow)
        for (int left = 0; left <= grow && !found; ++left) {
          int lo = std::max(0, c.lo - left), hi = std::min(t, c.hi + grow - left);
          if (lo == c.lo && hi == c.hi) continue;
          if (try_range(lo, hi)) {
            c.lo = lo;
            c.hi = hi;
            found = true;
          }
        }
      if (!found) {
        c.lo = std::max(0, c.lo - 1);
        c.hi = std::min(t, c.hi + 1);
      }
      grown = true;
    }
    if (grown) continue;

    // Chain clusters and plain runs into segments.
    Layout lay;
    lay.seg_of.assign(n, -1);
    std::vector<int> seg_cluster;
    int next = 0;
    auto push_run = [&](int lo, int hi) {
      Segment s;
      s.lo = lo;
      s.hi = hi;
      for (int i = lo; i <= hi; ++i) s.path.push_back(g[i]);
      lay.segs.push_back(s);
      seg_cluster.push_back(-1);
    };
    for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
      if (clusters[ci].lo > next) push_run(next, clusters[ci].lo - 1);
      Segment s;
      s.lo = clusters[ci].lo;
      s.hi = clusters[ci].hi;
      s.extra.assign(clusters[ci].extra.begin(), clusters[ci].extra.end());
      s.path = cpaths[ci];
      lay.segs.push_back(s);
      seg_cluster.push_back(static_cast<int>(ci));
      next = clusters[ci].hi + 1;
    }
    if (next <= t) push_run(next, t);
    for (std::size_t si = 0; si < lay.segs.size(); ++si)
      for (int v : lay.segs[si].path) {
        lay.seg_of[v] = static_cast<int>(si);
        lay.path.push_back(v);
      }

    // Condition (2): an outside vertex joining two segments merges them.
    std::vector<std::set<int>> touched(n);
    bool merged_any = false;
    for (int u = 0; u < n && !merged_any; ++u) {
      if (lay.seg_of[u] >= 0) continue;
      for (int v : nb[u])
        if (lay.seg_of[v] >= 0) touched[u].insert(lay.seg_of[v]);
      if (touched[u].size() > 1) {
        int lo = t, hi = 0;
        for (int si : touched[u]) {
          if (seg_cluster[si] >= 0) {
            lo = std::min(lo, lay.segs[si].lo);
            hi = std::max(hi, lay.segs[si].hi);
          }
        }
        for (int p : att[u]) {
          lo = std::min(lo, p);
          hi = std::max(hi, p);
        }
        Cluster c{lo, hi, {}};
        std::vector<Cluster> keep;
        for (auto& k : clusters) {
          if (k.hi < lo || k.lo > hi)
            keep.push_back(k);
          else
            c.extra.insert(k.extra.begin(), k.extra.end());
        }
        keep.push_back(c);
        clusters = std::move(keep);
        merged_any = true;
      }
    }
    if (merged_any) continue;

    // Condition (1): outside neighbours of plain runs are type (a) or (b).
    for (int u = 0; u < n; ++u) {
      if (touched[u].size() != 1) continue;
      int si = *touched[u].begin();
      if (seg_cluster[si] >= 0) continue;
      if (!kind[u] || (*kind[u] != AttachKind::A && *kind[u] != AttachKind::B)) {
        std::ostringstream os;
        os << "vertex " << u << " of kind " << kind_char(kind[u]) << " hangs off a plain run";
        return fail(os.str());
      }
    }

    out.segments = lay.segs;
    out.neighborhood = lay.path;
    out.condition1 = true;
    out.condition2 = true;

    // Segment accounting across the lambda grid; absorb the worst outside vertex of a failing segment.
    int bad_seg = -1;
    double worst_excess = 0.0;
    double worst_lambda = 0.0;
    for (double lambda : grid) {
      for (const auto& a : segment_accounts(x, out, lambda)) {
        double excess = a.residual_sum - a.budget;
        if (excess > 1e-9 && excess > worst_excess) {
          worst_excess = excess;
          bad_seg = a.segment;
          worst_lambda = lambda;
        }
      }
    }
    if (bad_seg < 0) {
      for (auto& s : out.segments) {
        std::vector<ExtraInfo> info;
        for (int u : s.extra) info.push_back({kind_char(kind[u]), att[u].empty() ? -1 : att[u].front() - s.lo});
        s.signature = signature_of(s.hi - s.lo + 1, info);
        s.type = classify(s.hi - s.lo + 1, info);
      }
      out.ok = true;
      for (const auto& s : out.segments)
        if (s.type == 0) {
          out.ok = false;
          out.failure = "segment signature " + s.signature + " is not in the segment table";
          break;
        }
      return out;
    }
    TestFunction tf{out.neighborhood, wave_root(worst_lambda), worst_lambda};
    auto res = residuals(x, tf);
    int pick = -1;
    double best = -1.0;
    for (int u = 0; u < n; ++u)
      if (touched[u].size() == 1 && *touched[u].begin() == bad_seg && res[u] > best) {
        best = res[u];
        pick = u;
      }
    int ci = seg_cluster[bad_seg];
    if (pick >= 0) {
      if (ci >= 0) {
        clusters[ci].extra.insert(pick);
      } else {
        Cluster c{att[pick].empty() ? lay.segs[bad_seg].lo : att[pick].front(),
                  att[pick].empty() ? lay.segs[bad_seg].hi : att[pick].back(), {pick}};
        clusters.push_back(c);
      }
    } else if (ci >= 0) {
      clusters[ci].lo = std::max(0, clusters[ci].lo - 1);
      clusters[ci].hi = std::min(t, clusters[ci].hi + 1);
    } else {
      return fail("plain run " + std::to_string(lay.segs[bad_seg].lo) + ".." + std::to_string(lay.segs[bad_seg].hi) +
                  " exceeds its residual budget");
    }
  }
  return fail("decomposition did not converge");
}

namespace {

// Diameter geodesics between all pairs at maximal distance, in a fixed order.
std::vector<std::vector<int>> diameter_geodesics(const Multigraph& x, std::size_t limit) {
  std::vector<std::vector<int>> out;
  auto [d, first] = diameter_and_geodesic(x);
  out.push_back(first.vertices);
  for (int s = 0; s < x.n && out.size() < limit; ++s) {
    auto dist = bfs_distances(x, s);
    auto parent = bfs_parents(x, s);
    for (int y = 0; y < x.n && out.size() < limit; ++y) {
      if (dist[y] != d || y < s) continue;
      std::vector<int> p;
      for (int v = y; v != -1; v = parent[v]) p.push_back(v);
      std::reverse(p.begin(), p.end());
      if (p != out.front()) out.push_back(p);
    }
  }
  return out;
}

}  // namespace

SegmentDecomposition decompose_geodesic(const Multigraph& x) {
  if (!x.is_cubic()) throw std::invalid_argument("decompose_geodesic needs a cubic graph");
  if (!is_connected(x)) throw std::invalid_argument("decompose_geodesic needs a connected graph");
  SegmentDecomposition first;
  bool have_first = false;
  for (const auto& g : diameter_geodesics(x, 64)) {
    auto d = decompose_along(x, g);
    if (d.ok) return d;
    if (!have_first) {
      first = d;
      have_first = true;
    }
  }
  return first;
}

std::vector<SegmentAccount> segment_accounts(const Multigraph& x, const SegmentDecomposition& d, double lambda) {
  std::vector<int> seg_of(x.n, -1);
  for (std::size_t si = 0; si < d.segments.size(); ++si)
    for (int v : d.segments[si].path) seg_of[v] = static_cast<int>(si);
  TestFunction tf{d.neighborhood, wave_root(lambda), lambda};
  auto res = residuals(x, tf);
  std::vector<SegmentAccount> acc(d.segments.size());
  for (std::size_t si = 0; si < acc.size(); ++si) {
    acc[si].segment = static_cast<int>(si);
    acc[si].budget = d.segments[si].size();
  }
  if (!d.neighborhood.empty()) {
    acc[seg_of[d.neighborhood.front()]].budget += 9.0;
    acc[seg_of[d.neighborhood.back()]].budget += 9.0;
  }
  auto nb = x.simple_neighbors();
  for (int v = 0; v < x.n; ++v) {
    double r2 = res[v] * res[v];
    if (seg_of[v] >= 0) {
      acc[seg_of[v]].residual_sum += r2;
      continue;
    }
    int owner = -1;
    for (int u : nb[v])
      if (seg_of[u] >= 0) owner = owner < 0 ? seg_of[u] : std::min(owner, seg_of[u]);
    if (owner >= 0) acc[owner].residual_sum += r2;
  }
  for (auto& a : acc) a.ok = a.residual_sum <= a.budget + 1e-9;
  return acc;
}

GeodesicBoundReport geodesic_bound(const Multigraph& x, double lambda) {
  if (std::abs(lambda) > kSqrt2 + 1e-12) throw std::invalid_argument("geodesic_bound needs |lambda| <= sqrt 2");
  return geodesic_bound(x, lambda, decompose_geodesic(x));
}

GeodesicBoundReport geodesic_bound(const Multigraph& x, double lambda, const SegmentDecomposition& d) {
  if (std::abs(lambda) > kSqrt2 + 1e-12) throw std::invalid_argument("geodesic_bound needs |lambda| <= sqrt 2");
  if (x.n <= 3) throw std::invalid_argument("geodesic_bound needs |X| > 3");
  GeodesicBoundReport r;
  r.decomposition = d;
  r.L = length_scale(x);
  if (!d.ok) throw std::runtime_error("decomposition failed: " + d.failure);
  TestFunction tf{d.neighborhood, wave_root(lambda), lambda};
  r.rayleigh.residuals = residuals(x, tf);
  double s = 0.0;
  for (double v : r.rayleigh.residuals) s += v * v;
  r.rayleigh.rayleigh = s / static_cast<double>(d.neighborhood.size());
  r.rayleigh.bound = 1.0 + 18.0 / r.L;
  r.rayleigh.distance_bound = std::sqrt(r.rayleigh.rayleigh);
  r.rayleigh.holds = r.rayleigh.rayleigh <= r.rayleigh.bound + 1e-12;
  r.accounts = segment_accounts(x, d, lambda);
  r.accounting_ok = std::all_of(r.accounts.begin(), r.accounts.end(), [](const SegmentAccount& a) { return a.ok; });
  return r;
}

FeketeResult fekete_finiteness(const Multigraph& x, const std::vector<double>& f_in) {
  std::vector<double> f = f_in;
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }), f.end());
  FeketeResult r;
  r.k = static_cast<int>(f.size());
  r.diameter = diameter_and_geodesic(x).first;
  if (r.k == 0) {
    r.verdict = FeketeVerdict::SpectrumNotContained;
    return r;
  }
  if (r.diameter >= r.k) {
    for (int s = 0; s < x.n && r.x0 < 0; ++s) {
      auto dist = bfs_distances(x, s);
      for (int y = 0; y < x.n; ++y)
        if (dist[y] == r.k) {
          r.x0 = s;
          r.y0 = y;
          break;
        }
    }
    Eigen::MatrixXi a = adjacency_counts(x);
    std::vector<long long> row(x.n, 0);
    row[r.x0] = 1;
    for (int m = 0; m <= r.k; ++m) {
      r.path_counts.push_back(row[r.y0]);
      std::vector<long long> nxt(x.n, 0);
      for (int i = 0; i < x.n; ++i)
        if (row[i])
          for (int j = 0; j < x.n; ++j) nxt[j] += row[i] * a(i, j);
      row = std::move(nxt);
    }
    bool zeros = std::all_of(r.path_counts.begin(), r.path_counts.end() - 1, [](long long c) { return c == 0; });
    if (!zeros || r.path_counts.back() <= 0) throw std::logic_error("path counts contradict the BFS distance");
    r.verdict = FeketeVerdict::SpectrumNotContained;
    return r;
  }
  Eigen::MatrixXd a = adjacency_matrix(x);
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(x.n, x.n);
  double scale = 1.0;
  for (double v : f) {
    p = p * (a - v * Eigen::MatrixXd::Identity(x.n, x.n));
    scale *= 3.0 + std::abs(v);
  }
  r.residual = p.cwiseAbs().maxCoeff();
  r.verdict = r.residual <= 1e-10 * scale ? FeketeVerdict::Contained : FeketeVerdict::SpectrumNotContained;
  return r;
}

GapAudit audit_gap_interval(double lo, double hi, const std::string& family_name,
                            const std::function<Multigraph(int)>& family, int n_min, int n_max, double epsilon) {
  GapAudit a;
  a.lo = lo;
  a.hi = hi;
  a.family = family_name;
  a.n_min = n_min;
  a.n_max = n_max;
  std::vector<Multigraph> members;
  std::vector<Spectrum> spectra;
  for (int n = n_min; n <= n_max; ++n) {
    members.push_back(family(n));
    spectra.push_back(spectrum(members.back()));
    for (double e : spectra.back())
      if (e > lo + 1e-9 && e < hi - 1e-9) a.violations.push_back({n, e});
  }
  a.achieved = a.violations.empty();
  for (const std::string side : {"left", "right"}) {
    WidenEvidence w;
    w.side = side;
    w.epsilon = epsilon;
    w.lo = side == "left" ? lo - epsilon : lo;
    w.hi = side == "left" ? hi : hi + epsilon;
    w.midpoint = (w.lo + w.hi) / 2.0;
    for (std::size_t i = 0; i < members.size() && !w.intersects; ++i)
      for (double e : spectra[i])
        if (e > w.lo && e < w.hi) {
          w.intersects = true;
          w.witness_n = n_min + static_cast<int>(i);
          w.witness_eigenvalue = e;
          break;
        }
    const double half = (w.hi - w.lo) / 2.0;
    const Multigraph& big = members.back();
    w.required_L = half > 1.0 ? 18.0 / (half * half - 1.0) : std::numeric_limits<double>::infinity();
    if (std::abs(w.midpoint) <= kSqrt2) {
      w.method = "geodesic";
      auto d = decompose_geodesic(big);
      if (d.ok && big.n > 3) w.radius_at_largest = geodesic_bound(big, w.midpoint, d).rayleigh.distance_bound;
    } else if (auto p = find_hamilton_path(big)) {
      w.method = "hampath";
      w.radius_at_largest = hampath_bound(big, std::clamp(w.midpoint, -2.0, 2.0), *p).distance_bound;
      w.required_L = half > 1.0 ? 16.0 / (half * half - 1.0) : std::numeric_limits<double>::infinity();
    } else {
      w.method = "inconclusive at edge";
    }
    a.widened.push_back(w);
  }
  return a;
}

nlohmann::json to_json(const GapAudit& a) {
  nlohmann::json j;
  j["interval"] = {a.lo, a.hi};
  j["family"] = a.family;
  j["n_range"] = {a.n_min, a.n_max};
  j["achieved"] = a.achieved;
  j["violations"] = nlohmann::json::array();
  for (auto [n, e] : a.violations) j["violations"].push_back({{"n", n}, {"eigenvalue", e}});
  j["widened"] = nlohmann::json::array();
  for (const auto& w : a.widened) {
    nlohmann::json wj{{"side", w.side},         {"epsilon", w.epsilon},
                      {"interval", {w.lo, w.hi}}, {"midpoint", w.midpoint},
                      {"intersects", w.intersects}, {"method", w.method},
                      {"radius_at_largest", w.radius_at_largest}};
    wj["required_L"] = std::isfinite(w.required_L) ? nlohmann::json(w.required_L) : nlohmann::json("never");
    if (w.intersects) wj["witness"] = {{"n", w.witness_n}, {"eigenvalue", w.witness_eigenvalue}};
    j["widened"].push_back(wj);
  }
  return j;
}

nlohmann::json to_json(const SegmentDecomposition& d) {
  nlohmann::json j;
  j["geodesic"] = d.geodesic;
  j["neighborhood"] = d.neighborhood;
  j["condition1"] = d.condition1;
  j["condition2"] = d.condition2;
  j["ok"] = d.ok;
  if (!d.ok) j["failure"] = d.failure;
  j["segments"] = nlohmann::json::array();
  for (const auto& s : d.segments)
    j["segments"].push_back({{"type", segment_type_name(s.type)},
                             {"range", {s.lo, s.hi}},
                             {"extra", s.extra},
                             {"path", s.path},
                             {"signature", s.signature}});
  return j;
}

}  // namespace gapsets
