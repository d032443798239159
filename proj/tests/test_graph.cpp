#include <doctest.h>

#include "gapsets/canonical.hpp"
#include "gapsets/enumerate.hpp"
#include "gapsets/families.hpp"
#include "gapsets/multigraph.hpp"
#include "gapsets/planarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace gapsets;

namespace {

// Classes of connected symmetric count matrices with row sums 3 and even diagonal,
// deduplicated by trying every vertex permutation.
int brute_force_class_count(int n, bool loops, bool multi) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  std::vector<int> rem(n, 3);
  std::set<std::vector<int>> classes;
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) cells.push_back({i, j});
  auto canon = [&]() {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<int> best;
    do {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) s.push_back(m[p[i]][p[j]]);
      if (best.empty() || s < best) best = s;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
  };
  auto connected = [&]() {
    std::vector<int> seen(n, 0), st{0};
    seen[0] = 1;
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int w = 0; w < n; ++w)
        if (w != v && m[v][w] && !seen[w]) {
          seen[w] = 1;
          st.push_back(w);
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int x) { return x; });
  };
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == cells.size()) {
      if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; }) && connected()) classes.insert(canon());
      return;
    }
    auto [i, j] = cells[c];
    if (i == j) {
      for (int loopsn = 0; 2 * loopsn <= rem[i] && (loops || loopsn == 0); ++loopsn) {
        m[i][i] = 2 * loopsn;
        rem[i] -= 2 * loopsn;
        rec(c + 1);
        rem[i] += 2 * loopsn;
        m[i][i] = 0;
      }
      return;
    }
    for (int k = 0; k <= std::min(rem[i], rem[j]) && (multi || k <= 1); ++k) {
      m[i][j] = m[j][i] = k;
      rem[i] -= k;
      rem[j] -= k;
      bool done_i = (j == n - 1) && rem[i] != 0;
      if (!done_i) rec(c + 1);
      rem[i] += k;
      rem[j] += k;
      m[i][j] = m[j][i] = 0;
    }
  };
  rec(0);
  return static_cast<int>(classes.size());
}

Multigraph random_relabel(const Multigraph& g, std::mt19937_64& rng) {
  std::vector<int> p(g.n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return relabel(g, p);
}

}  // namespace

TEST_CASE("adjacency conventions") {
  auto a = adjacency_matrix(k4());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(a(i, j) == (i == j ? 0.0 : 1.0));
  auto b = adjacency_matrix(b2());
  CHECK(b(0, 0) == 0.0);
  for (int v = 1; v < 4; ++v) CHECK(b(v, v) == 2.0);
  for (auto g : enumerate_cubic_multigraphs(6, true, true)) {
    auto m = adjacency_matrix(g);
    for (int i = 0; i < g.n; ++i) CHECK(m.row(i).sum() == 3.0);
  }
}

TEST_CASE("named spectra") {
  auto close = [](const Spectrum& s, std::vector<double> e) {
    std::sort(e.begin(), e.end());
    REQUIRE(s.size() == e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      if (std::abs(s[i] - e[i]) > 1e-9) return false;
    return true;
  };
  CHECK(close(spectrum(k4()), {-1, -1, -1, 3}));
  // Hypercube Q3: eigenvalues 3 - 2k with multiplicity C(3,k).
  CHECK(close(spectrum(cube()), {-3, -1, -1, -1, 1, 1, 1, 3}));
  CHECK(close(spectrum(b1()), {-2, -1, 2, 3}));
  CHECK(close(spectrum(b2()), {-1, 2, 2, 3}));
}

TEST_CASE("B1 and B2 are the unique spectral matches among 4-vertex multigraphs") {
  auto all = enumerate_cubic_multigraphs(4, true, true);
  auto matches = [&](std::vector<double> target) {
    std::vector<Multigraph> out;
    for (const auto& g : all) {
      auto s = spectrum(g);
      bool ok = true;
      for (int i = 0; i < 4; ++i) ok = ok && std::abs(s[i] - target[i]) < 1e-9;
      if (ok) out.push_back(g);
    }
    return out;
  };
  auto m1 = matches({-2, -1, 2, 3});
  auto m2 = matches({-1, 2, 2, 3});
  REQUIRE(m1.size() == 1);
  REQUIRE(m2.size() == 1);
  CHECK(isomorphic(m1[0], b1()));
  CHECK(isomorphic(m2[0], b2()));
}

TEST_CASE("enumeration counts agree with a brute-force matrix oracle") {
  for (int n : {2, 4, 6}) {
    CHECK(enumerate_cubic_multigraphs(n, true, true).size() == static_cast<std::size_t>(brute_force_class_count(n, true, true)));
    CHECK(enumerate_cubic_multigraphs(n, false, true).size() == static_cast<std::size_t>(brute_force_class_count(n, false, true)));
    if (n >= 4)
      CHECK(enumerate_cubic_multigraphs(n, false, false).size() == static_cast<std::size_t>(brute_force_class_count(n, false, false)));
  }
  auto simple4 = enumerate_cubic_multigraphs(4, false, false);
  REQUIRE(simple4.size() == 1);
  CHECK(isomorphic(simple4[0], k4()));
}

TEST_CASE("enumeration counts for larger n match published census values") {
  // Connected cubic multigraphs with loops; loopless multigraphs; simple graphs.
  CHECK(enumerate_cubic_multigraphs(8, true, true).size() == 71);
  CHECK(enumerate_cubic_multigraphs(10, true, true).size() == 388);
  CHECK(enumerate_cubic_multigraphs(8, false, true).size() == 20);
  CHECK(enumerate_cubic_multigraphs(10, false, true).size() == 91);
  CHECK(enumerate_cubic_multigraphs(8, false, false).size() == 5);
  CHECK(enumerate_cubic_multigraphs(10, false, false).size() == 19);
  CHECK(enumerate_cubic_multigraphs(12, false, false).size() == 85);
}

TEST_CASE("enumeration is deterministic and rejects bad sizes") {
  auto a = enumerate_cubic_multigraphs(6, true, true);
  auto b = enumerate_cubic_multigraphs(6, true, true);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].edges == b[i].edges);
  CHECK_THROWS(enumerate_cubic_multigraphs(5, true, true));
  CHECK_THROWS(enumerate_cubic_multigraphs(14, true, true));
}

TEST_CASE("spectral invariants over the enumeration") {
  std::mt19937_64 rng(7);
  for (int n : {2, 4, 6, 8}) {
    for (const auto& g : enumerate_cubic_multigraphs(n, true, true)) {
      auto s = spectrum(g);
      CHECK(std::abs(s.back() - 3.0) < 1e-9);
      CHECK(s.front() >= -3.0 - 1e-9);
      double tr = adjacency_matrix(g).trace();
      CHECK(std::abs(std::accumulate(s.begin(), s.end(), 0.0) - tr) < 1e-9);
      auto t = spectrum(random_relabel(g, rng));
      for (int i = 0; i < n; ++i) CHECK(std::abs(s[i] - t[i]) < 1e-9);
      CHECK(isomorphic(g, random_relabel(g, rng)));
      if (is_bipartite(g))
        for (int i = 0; i < n; ++i) CHECK(std::abs(s[i] + s[n - 1 - i]) < 1e-9);
    }
  }
}

TEST_CASE("diameter and geodesics") {
  CHECK(diameter_and_geodesic(k4()).first == 1);
  auto [d, p] = diameter_and_geodesic(cube());
  CHECK(d == 3);
  CHECK((p.vertices.front() ^ p.vertices.back()) == 7);
  std::mt19937_64 rng(11);
  auto g = random_cubic_graph(96, rng);
  CHECK(diameter_and_geodesic(g).first >= 6);
  for (int trial = 0; trial < 30; ++trial) {
    auto h = random_cubic_graph(10 + 2 * trial, rng);
    auto [dh, ph] = diameter_and_geodesic(h);
    CHECK(ph.length() == dh);
    CHECK(dh > std::log2(h.n / 3.0));
    for (std::size_t i = 0; i < ph.vertices.size(); ++i) {
      auto dist = bfs_distances(h, ph.vertices[i]);
      for (std::size_t j = 0; j < ph.vertices.size(); ++j)
        CHECK(dist[ph.vertices[j]] == static_cast<int>(i > j ? i - j : j - i));
    }
  }
  Multigraph disc(4, {{0, 1}, {2, 3}});
  CHECK_THROWS(diameter_and_geodesic(disc));
}

TEST_CASE("bipartiteness") {
  CHECK(is_bipartite(cube()));
  CHECK_FALSE(is_bipartite(k4()));
  CHECK_FALSE(is_bipartite(b2()));
  for (int n = 2; n <= 12; ++n) CHECK(is_bipartite(w_b(n)));
}

TEST_CASE("isomorphism and automorphisms") {
  CHECK(isomorphic(w_b(2), cube()));
  CHECK_FALSE(isomorphic(k4(), b1()));
  CHECK(automorphisms(k4()).size() == 24);
  CHECK(automorphisms(cube()).size() == 48);
  CHECK(automorphisms(prism3()).size() == 12);
}

TEST_CASE("planarity") {
  auto pk4 = is_planar(k4());
  CHECK(pk4.planar);
  CHECK(verify_embedding(k4(), pk4.rotation));
  CHECK(is_planar(cube()).planar);
  auto h = is_planar(w_b(3));
  CHECK_FALSE(h.planar);
  CHECK(h.kuratowski_kind == "K33");
  auto hf = is_planar_fallback(w_b(3));
  CHECK_FALSE(hf.planar);
  CHECK(hf.kuratowski_kind == "K33");
  Multigraph k5(5, {});
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5.add_edge(i, j);
  CHECK(is_planar(k5).kuratowski_kind == "K5");
  CHECK(is_planar_fallback(k5).kuratowski_kind == "K5");
}

TEST_CASE("planarity paths agree and satisfy Euler's bound") {
  std::mt19937_64 rng(3);
  std::vector<Multigraph> pool;
  for (int n : {4, 6, 8, 10})
    for (const auto& g : enumerate_cubic_multigraphs(n, true, true)) pool.push_back(g);
  for (int i = 0; i < 40; ++i) pool.push_back(random_cubic_graph(8 + 2 * (i % 20), rng));
  for (const auto& g : pool) {
    auto a = is_planar(g);
    auto b = is_planar_fallback(g);
    CHECK(a.planar == b.planar);
    auto es = simple_edges(g);
    if (a.planar) {
      CHECK(verify_embedding(g, a.rotation));
      if (g.n >= 3) CHECK(static_cast<int>(es.size()) <= 3 * g.n - 6);
    } else {
      CHECK((a.kuratowski_kind == "K33" || a.kuratowski_kind == "K5"));
      CHECK((b.kuratowski_kind == "K33" || b.kuratowski_kind == "K5"));
    }
  }
}

TEST_CASE("graph JSON round trip") {
  auto g = p_a(3);
  auto h = graph_from_json(to_json(g));
  CHECK(h.n == g.n);
  CHECK(h.edges == g.edges);
  CHECK(h.half_loops == g.half_loops);
  CHECK_THROWS(graph_from_json(nlohmann::json::parse(R"({"n":4,"edges":[]})")));
  CHECK_THROWS(graph_from_json(nlohmann::json::parse(R"({"n":2,"edges":[[0,5]]})")));
}
