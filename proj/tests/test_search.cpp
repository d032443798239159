#include <doctest.h>

#include "gapsets/families.hpp"
#include "gapsets/planarity.hpp"
#include "gapsets/search.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <numeric>
#include <set>

using namespace gapsets;

namespace {

constexpr double kPi = std::numbers::pi;

// Rank-1 Bloch matrix spectrum built entry by entry.
Spectrum bloch(const PeriodicGraph& p, double t) {
  const int n = p.base.n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t e = 0; e < p.base.edges.size(); ++e) {
    auto [o, d] = p.base.edges[e];
    std::complex<double> z = std::polar(1.0, p.offsets[e][0] * t);
    m(o, d) += z;
    m(d, o) += std::conj(z);
  }
  for (int v : p.base.half_loops) m(v, v) += 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  return Spectrum(es.eigenvalues().data(), es.eigenvalues().data() + n);
}

const std::vector<CatalogEntry>& planar_catalog() {
  static const auto r = [] {
    SearchOptions o;
    o.include_rank2 = false;
    return search_planar_covers(seed_multigraphs({2, 4, 6}), o);
  }();
  return r.covers;
}

}  // namespace

TEST_CASE("subtorus directions are coprime, one per sign pair") {
  auto d = subtorus_directions(3);
  CHECK(d.size() == 14);
  std::set<std::array<int, 2>> seen;
  for (auto [a, b] : d) {
    CHECK(a > 0);
    CHECK(b != 0);
    CHECK(std::gcd(a, std::abs(b)) == 1);
    CHECK(std::abs(b) <= 3);
    CHECK(seen.insert({a, b}).second);
    CHECK(seen.count({-a, -b}) == 0);
  }
}

TEST_CASE("4-vertex seeds rediscover the (-1,1) gapped cover") {
  SearchOptions o;
  o.grid = 256;
  auto seeds = seed_multigraphs({4});
  auto cat = search_covers(seeds, o);
  int hits = 0;
  for (const auto& e : cat)
    if (spectrum_matches(e.report.spectrum_estimate, {{-3, -1}, {1, 3}}, 1e-6)) {
      ++hits;
      CHECK(e.report.gaps.intervals().size() == 1);
    }
  CHECK(hits >= 1);
  auto again = search_covers(seeds, o);
  REQUIRE(again.size() == cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) CHECK(again[i].id == cat[i].id);
  std::set<std::string> hashes;
  for (const auto& e : cat) CHECK(hashes.insert(e.band_hash).second);
}

TEST_CASE("6-vertex seeds rediscover the (-2,0) gapped cover") {
  SearchOptions o;
  o.grid = 256;
  const double s = std::sqrt(17.0);
  auto cat = search_covers(seed_multigraphs({6}, false, false), o);
  bool found = false;
  for (const auto& e : cat)
    found = found || spectrum_matches(e.report.spectrum_estimate, {{-(1 + s) / 2, -2}, {0, (-1 + s) / 2}, {2, 3}}, 1e-6);
  CHECK(found);
}

TEST_CASE("single-link covers of K4 are connected at every quotient") {
  auto g = k4();
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    std::vector<Offset> off(g.edges.size(), Offset{0, 0});
    off[e] = {1, 0};
    PeriodicGraph p(g, 1, off);
    CHECK(cover_is_connected(p));
    for (int n = 1; n <= 8; ++n) CHECK(is_connected(cyclic_quotient(p, n)));
  }
}

TEST_CASE("catalog quotients match band samples at roots of unity") {
  const auto& cat = planar_catalog();
  REQUIRE(cat.size() >= 4);
  for (std::size_t i = 0; i < cat.size(); i += 7) {
    const auto& p = cat[i].cover;
    for (int n = 1; n <= 12; ++n) {
      Spectrum all;
      for (int m = 0; m < n; ++m) {
        auto s = bloch(p, 2 * kPi * m / n);
        all.insert(all.end(), s.begin(), s.end());
      }
      std::sort(all.begin(), all.end());
      auto q = spectrum(cyclic_quotient(p, n));
      REQUIRE(q.size() == all.size());
      double d = 0.0;
      for (std::size_t k = 0; k < q.size(); ++k) d = std::max(d, std::abs(q[k] - all[k]));
      CHECK(d < 1e-9);
    }
  }
}

TEST_CASE("planar catalog members have planar quotients by an independent test") {
  for (const auto& e : planar_catalog()) {
    CHECK(e.planar_quotients);
    CHECK(is_planar_fallback(cyclic_quotient(e.cover, 6)).planar);
  }
}

TEST_CASE("planar gap union covers [-2, 0] at resolution 0.01") {
  auto cov = gap_coverage(planar_catalog(), -2.0, 0.0);
  CHECK(cov.samples == 201);
  CHECK(cov.complete());
  CHECK(cov.cover_set.size() >= 1);
  std::vector<CatalogEntry> subset;
  for (const auto& e : planar_catalog())
    if (std::find(cov.cover_set.begin(), cov.cover_set.end(), e.id) != cov.cover_set.end()) subset.push_back(e);
  CHECK(gap_coverage(subset, -2.0, 0.0).complete());
}

TEST_CASE("gap membership treats the outside of [-3, 3] as gap") {
  GapReport r;
  r.gaps = IntervalSet({{-3.0, -2.5}, {-1.0, 1.0}});
  CHECK(in_gap(r, -3.2));
  CHECK(in_gap(r, 3.2));
  CHECK(in_gap(r, -3.0));
  CHECK(in_gap(r, 0.0));
  CHECK_FALSE(in_gap(r, 1.0));
  CHECK_FALSE(in_gap(r, -2.5));
  CHECK_FALSE(in_gap(r, 2.0));
}

TEST_CASE("catalog JSON lines round trip") {
  auto dir = std::filesystem::temp_directory_path() / "gapsets_catalog_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "catalog.jsonl").string();
  const auto& cat = planar_catalog();
  write_catalog(cat, path);
  auto back = read_catalog(path);
  REQUIRE(back.size() == cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(back[i].id == cat[i].id);
    CHECK(cover_id(back[i].cover) == cat[i].id);
    CHECK(back[i].report.gaps.intervals().size() == cat[i].report.gaps.intervals().size());
    CHECK(back[i].planar_quotients == cat[i].planar_quotients);
  }
  std::filesystem::remove_all(dir);
}
