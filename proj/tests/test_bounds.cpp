#include <doctest.h>

#include "gapsets/bounds.hpp"
#include "gapsets/enumerate.hpp"
#include "gapsets/families.hpp"
#include "gapsets/tmap.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace gapsets;

namespace {

double distance_to_spectrum(const Spectrum& s, double lambda) {
  double d = 1e300;
  for (double e : s) d = std::min(d, std::abs(e - lambda));
  return d;
}

bool adjacent(const Multigraph& g, int u, int v) {
  for (auto [a, b] : g.edges)
    if ((a == u && b == v) || (a == v && b == u)) return true;
  return false;
}

std::vector<double> distinct(const Spectrum& s) {
  std::vector<double> out;
  for (double e : s)
    if (out.empty() || e - out.back() > 1e-6) out.push_back(e);
  return out;
}

bool contained(const Spectrum& s, const std::vector<double>& f) {
  for (double e : s)
    if (std::none_of(f.begin(), f.end(), [&](double x) { return std::abs(x - e) < 1e-7; })) return false;
  return true;
}

// Independent check of the structural invariants of a decomposition.
void check_decomposition(const Multigraph& x, const SegmentDecomposition& d) {
  REQUIRE(d.ok);
  const auto& g = d.geodesic;
  const int t = static_cast<int>(g.size()) - 1;
  auto dist = bfs_distances(x, g.front());
  CHECK(dist[g.back()] == t);
  CHECK(t > std::log2(x.n / 3.0));
  for (int i = 0; i <= t; ++i) CHECK(dist[g[i]] == i);

  std::vector<int> seg_of(x.n, -1);
  int expect_lo = 0;
  for (std::size_t si = 0; si < d.segments.size(); ++si) {
    const auto& s = d.segments[si];
    CHECK(s.lo == expect_lo);
    expect_lo = s.hi + 1;
    CHECK(static_cast<int>(s.path.size()) == s.size());
    if (si + 1 < d.segments.size()) CHECK(s.path.back() == g[s.hi]);
    if (si > 0) CHECK(s.path.front() == g[s.lo]);
    for (int v : s.path) {
      CHECK(seg_of[v] == -1);
      seg_of[v] = static_cast<int>(si);
    }
    for (int i = s.lo; i <= s.hi; ++i) CHECK(seg_of[g[i]] == static_cast<int>(si));
    CHECK(s.type >= 1);
    CHECK(s.type <= 12);
    CHECK((s.type == 12) == s.extra.empty());
  }
  CHECK(expect_lo == t + 1);

  const auto& path = d.neighborhood;
  for (std::size_t i = 1; i < path.size(); ++i) CHECK(adjacent(x, path[i - 1], path[i]));
  CHECK(std::set<int>(path.begin(), path.end()).size() == path.size());

  std::vector<int> pos(x.n, -1);
  for (int i = 0; i <= t; ++i) pos[g[i]] = i;
  auto nb = x.simple_neighbors();
  for (int u = 0; u < x.n; ++u) {
    if (pos[u] >= 0) continue;
    std::vector<int> att;
    for (int v : nb[u])
      if (pos[v] >= 0) att.push_back(pos[v]);
    std::sort(att.begin(), att.end());
    bool consecutive = att.size() >= 2 && att[1] == att[0] + 1;
    if (consecutive) CHECK(seg_of[u] >= 0);
    if (seg_of[u] >= 0) continue;
    std::set<int> touched;
    for (int v : nb[u])
      if (seg_of[v] >= 0) touched.insert(seg_of[v]);
    CHECK(touched.size() <= 1);
    if (touched.size() == 1 && d.segments[*touched.begin()].type == 12) CHECK(!consecutive);
  }
}

Multigraph truncated_tetrahedron() { return tmap(k4()); }

}  // namespace

TEST_CASE("wave_root solves the characteristic equation on the unit circle") {
  for (double l = -2.0; l <= 2.0; l += 0.05) {
    auto w = wave_root(l);
    CHECK(std::abs(w * w - l * w + 1.0) < 1e-12);
    CHECK(std::abs(std::abs(w) - 1.0) < 1e-12);
    CHECK(w.imag() >= 0.0);
  }
  CHECK_THROWS(wave_root(2.1));
}

TEST_CASE("Hamilton paths are found and validated") {
  for (const auto& g : {k4(), cube(), prism3(), truncated_tetrahedron(), w_b(5)}) {
    auto p = find_hamilton_path(g);
    REQUIRE(p);
    CHECK(is_hamilton_path(g, *p));
    auto q = *p;
    std::reverse(q.begin(), q.end());
    CHECK(is_hamilton_path(g, q));
    q[1] = q[0];
    CHECK_FALSE(is_hamilton_path(g, q));
  }
  Multigraph star(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK_FALSE(find_hamilton_path(star));
  CHECK_FALSE(is_hamilton_path(cube(), {0, 1, 2}));
}

TEST_CASE("hampath bound on the cube at lambda 0") {
  auto x = cube();
  auto p = *find_hamilton_path(x);
  auto r = hampath_bound(x, 0.0, p);
  CHECK(r.bound == doctest::Approx(3.0));
  CHECK(r.holds);
  CHECK(r.rayleigh <= 3.0 + 1e-12);
  double dist = distance_to_spectrum(spectrum(x), 0.0);
  CHECK(dist == doctest::Approx(1.0));
  CHECK(dist <= r.distance_bound + 1e-9);
}

TEST_CASE("hampath residuals are localized on random cubic graphs") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ul(-2.0, 2.0);
  int tested = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 8 + 2 * static_cast<int>(rng() % 20);
    auto x = random_cubic_graph(n, rng);
    auto p = find_hamilton_path(x);
    if (!p) continue;
    ++tested;
    auto spec = spectrum(x);
    for (int k = 0; k < 4; ++k) {
      double l = ul(rng);
      auto r = hampath_bound(x, l, *p);
      for (int j = 1; j + 1 < n; ++j) CHECK(r.residuals[(*p)[j]] == doctest::Approx(1.0));
      CHECK(r.residuals[p->front()] <= 3.0 + 1e-12);
      CHECK(r.residuals[p->back()] <= 3.0 + 1e-12);
      CHECK(r.rayleigh * n <= n + 16 + 1e-9);
      CHECK(r.holds);
      double dist = distance_to_spectrum(spec, l);
      CHECK(dist * dist <= r.rayleigh + 1e-9);
    }
  }
  CHECK(tested > 40);
}

TEST_CASE("hampath bound rejects bad input") {
  auto x = cube();
  auto p = *find_hamilton_path(x);
  CHECK_THROWS(hampath_bound(x, 2.5, p));
  auto q = p;
  q.pop_back();
  CHECK_THROWS(hampath_bound(x, 0.0, q));
  q = p;
  q.back() = q.front();
  CHECK_THROWS(hampath_bound(x, 0.0, q));
}

TEST_CASE("an eigenvalue of X is at distance zero from the spectrum") {
  auto x = cube();
  auto p = *find_hamilton_path(x);
  for (double l : {-1.0, 1.0}) {
    auto r = hampath_bound(x, l, p);
    CHECK(distance_to_spectrum(spectrum(x), l) < 1e-12);
    CHECK(r.distance_bound >= 0.0);
  }
}

TEST_CASE("attachment kinds follow the geodesic positions") {
  CHECK(attach_kind({4}) == AttachKind::A);
  CHECK(attach_kind({2, 4}) == AttachKind::B);
  CHECK(attach_kind({2, 3}) == AttachKind::C);
  CHECK(attach_kind({2, 3, 4}) == AttachKind::D);
  CHECK_FALSE(attach_kind({1, 4}));
  CHECK_FALSE(attach_kind({}));
}

TEST_CASE("cube decomposes into a single plain run") {
  auto x = cube();
  auto d = decompose_geodesic(x);
  check_decomposition(x, d);
  CHECK(d.geodesic.size() == 4);
  REQUIRE(d.segments.size() == 1);
  CHECK(d.segments[0].type == 12);
  CHECK(segment_type_name(d.segments[0].type) == "XII");
  std::vector<int> pos(8, -1);
  for (int i = 0; i < 4; ++i) pos[d.geodesic[i]] = i;
  auto nb = x.simple_neighbors();
  for (int u = 0; u < 8; ++u) {
    if (pos[u] >= 0) continue;
    std::vector<int> att;
    for (int v : nb[u])
      if (pos[v] >= 0) att.push_back(pos[v]);
    std::sort(att.begin(), att.end());
    auto k = attach_kind(att);
    if (!att.empty()) CHECK((k == AttachKind::A || k == AttachKind::B));
  }
}

TEST_CASE("a triangle straddling the geodesic is captured in a non-plain segment") {
  auto x = truncated_tetrahedron();
  std::set<std::pair<int, int>> triangle_edges;
  auto nb = x.simple_neighbors();
  for (int a = 0; a < x.n; ++a)
    for (int b : nb[a])
      for (int c : nb[b])
        if (c != a && adjacent(x, a, c)) triangle_edges.insert({std::min(a, b), std::max(a, b)});
  bool found = false;
  for (int s = 0; s < x.n && !found; ++s) {
    auto dist = bfs_distances(x, s);
    auto parent = bfs_parents(x, s);
    for (int y = 0; y < x.n && !found; ++y) {
      if (dist[y] < 2) continue;
      std::vector<int> g;
      for (int v = y; v != -1; v = parent[v]) g.push_back(v);
      std::reverse(g.begin(), g.end());
      int tri = -1;
      for (std::size_t i = 1; i < g.size(); ++i)
        if (triangle_edges.count({std::min(g[i - 1], g[i]), std::max(g[i - 1], g[i])})) tri = static_cast<int>(i) - 1;
      if (tri < 0) continue;
      found = true;
      auto d = decompose_along(x, g);
      REQUIRE(d.ok);
      int apex = -1;
      for (int c : nb[g[tri]])
        if (c != g[tri + 1] && adjacent(x, c, g[tri + 1])) apex = c;
      REQUIRE(apex >= 0);
      bool captured = false;
      for (const auto& seg : d.segments)
        if (std::find(seg.extra.begin(), seg.extra.end(), apex) != seg.extra.end()) captured = seg.type != 12;
      CHECK(captured);
    }
  }
  CHECK(found);
}

TEST_CASE("decompositions satisfy conditions (1) and (2) on random cubic graphs") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 10 + 2 * static_cast<int>(rng() % 26);
    auto x = random_cubic_graph(n, rng);
    auto d = decompose_geodesic(x);
    CHECK(d.condition1);
    CHECK(d.condition2);
    check_decomposition(x, d);
  }
}

TEST_CASE("geodesic bound on the cube at lambda 0") {
  auto x = cube();
  auto r = geodesic_bound(x, 0.0);
  CHECK(std::sqrt(r.rayleigh.bound) == doctest::Approx(std::sqrt(1.0 + 18.0 / std::log2(8.0 / 3.0))));
  CHECK(std::sqrt(r.rayleigh.bound) == doctest::Approx(3.70).epsilon(2e-3));
  CHECK(r.rayleigh.holds);
  CHECK(r.accounting_ok);
  CHECK(distance_to_spectrum(spectrum(x), 0.0) <= r.rayleigh.distance_bound + 1e-9);
  CHECK_THROWS(geodesic_bound(x, 1.5));
}

TEST_CASE("geodesic bound holds with segment accounting on random cubic graphs") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 20 + 2 * static_cast<int>(rng() % 51);
    auto x = random_cubic_graph(n, rng);
    auto spec = spectrum(x);
    auto d = decompose_geodesic(x);
    REQUIRE(d.ok);
    const double L = std::log2(n / 3.0);
    for (double l : {-1.4, -0.7, 0.0, 0.7, 1.4}) {
      auto r = geodesic_bound(x, l, d);
      CHECK(r.accounting_ok);
      CHECK(r.rayleigh.holds);
      double dist = distance_to_spectrum(spec, l);
      CHECK(dist * dist <= r.rayleigh.rayleigh + 1e-9);
      CHECK(dist <= std::sqrt(1.0 + 18.0 / L) + 1e-12);
    }
  }
}

TEST_CASE("long intervals inside (-1-sqrt2, 1+sqrt2) meet the spectrum") {
  std::mt19937_64 rng(5);
  const double edge = 1.0 + std::sqrt(2.0);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 60 + 2 * static_cast<int>(rng() % 31);
    auto x = random_cubic_graph(n, rng);
    auto spec = spectrum(x);
    double r = std::sqrt(1.0 + 18.0 / std::log2(n / 3.0));
    for (double c = -kSqrt2; c <= kSqrt2; c += 0.05) {
      if (c - r <= -edge || c + r >= edge) continue;
      bool meets = std::any_of(spec.begin(), spec.end(), [&](double e) { return e >= c - r && e <= c + r; });
      CHECK(meets);
    }
  }
}

TEST_CASE("fekete finiteness on the K4 and prism examples") {
  auto k = fekete_finiteness(k4(), {-1.0, 3.0});
  CHECK(k.verdict == FeketeVerdict::Contained);
  CHECK(k.residual < 1e-9);
  auto p = fekete_finiteness(prism3(), {-1.0, 3.0});
  CHECK(p.verdict == FeketeVerdict::SpectrumNotContained);
  CHECK(p.diameter == 2);
  REQUIRE(p.path_counts.size() == 3);
  CHECK(p.path_counts[0] == 0);
  CHECK(p.path_counts[1] == 0);
  CHECK(p.path_counts[2] > 0);
  CHECK(bfs_distances(prism3(), p.x0)[p.y0] == 2);
}

TEST_CASE("fekete verdicts agree with direct containment for small cubic multigraphs") {
  for (int n = 2; n <= 8; n += 2)
    for (const auto& g : enumerate_cubic_multigraphs(n, true, true)) {
      auto spec = spectrum(g);
      auto vals = distinct(spec);
      const int m = static_cast<int>(vals.size());
      for (int mask = 1; mask < (1 << m); ++mask) {
        if (__builtin_popcount(mask) > 4) continue;
        std::vector<double> f;
        for (int i = 0; i < m; ++i)
          if (mask >> i & 1) f.push_back(vals[i]);
        bool expect = contained(spec, f);
        auto r = fekete_finiteness(g, f);
        CHECK((r.verdict == FeketeVerdict::Contained) == expect);
      }
    }
}

TEST_CASE("large length scale forces spectrum not contained") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_cubic_graph(50 + 2 * static_cast<int>(rng() % 20), rng);
    auto vals = distinct(spectrum(x));
    std::shuffle(vals.begin(), vals.end(), rng);
    std::vector<double> f(vals.begin(), vals.begin() + 4);
    REQUIRE(length_scale(x) >= 4.0);
    auto r = fekete_finiteness(x, f);
    CHECK(r.verdict == FeketeVerdict::SpectrumNotContained);
    CHECK(r.x0 >= 0);
  }
}

TEST_CASE("gap audits for the extremal quotient families") {
  auto b = audit_gap_interval(-1.0, 1.0, "W_b", w_b, 2, 16);
  CHECK(b.achieved);
  REQUIRE(b.widened.size() == 2);
  for (const auto& w : b.widened) {
    CHECK(w.intersects);
    CHECK(w.method == "geodesic");
    CHECK(w.radius_at_largest > 0.0);
    CHECK(w.required_L > 0.0);
  }
  auto a = audit_gap_interval(-2.0, 0.0, "W_a", w_a, 2, 16);
  CHECK(a.achieved);
  for (const auto& w : a.widened) CHECK(w.intersects);
  auto j = to_json(a);
  CHECK(j["achieved"] == true);
  CHECK(j["widened"].size() == 2);
}

TEST_CASE("the Ramanujan interval is not achieved by the quotient families") {
  for (const auto& [name, fam] : {std::pair{std::string("W_b"), std::function<Multigraph(int)>(w_b)},
                                  std::pair{std::string("W_a"), std::function<Multigraph(int)>(w_a)}}) {
    auto r = audit_gap_interval(2.0 * std::sqrt(2.0), 3.0, name, fam, 2, 16);
    CHECK_FALSE(r.achieved);
    REQUIRE_FALSE(r.violations.empty());
    for (auto [n, e] : r.violations) {
      CHECK(e > 2.0 * std::sqrt(2.0));
      CHECK(e < 3.0);
    }
    auto j = to_json(r);
    CHECK(j["violations"].size() == r.violations.size());
  }
}
