#include "gapsets/search.hpp"

#include "gapsets/enumerate.hpp"
#include "gapsets/planarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gapsets {

std::vector<std::array<int, 2>> subtorus_directions(int m) {
  std::vector<std::array<int, 2>> out;
  for (int a = 1; a <= m; ++a)
    for (int b = -m; b <= m; ++b)
      if (b != 0 && std::gcd(a, std::abs(b)) == 1) out.push_back({a, b});
  return out;
}

std::string band_hash(const BandStructure& b) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::int64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= static_cast<std::uint64_t>(x >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(b.rank);
  mix(b.values.cols());
  // Sorted samples per track: invariant under theta -> -theta.
  for (int j = 0; j < b.values.cols(); ++j) {
    std::vector<std::int64_t> q;
    for (int i = 0; i < b.values.rows(); ++i) q.push_back(std::llround(b.values(i, j) * 1e6));
    std::sort(q.begin(), q.end());
    for (auto x : q) mix(x);
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

bool quotients_planar(const PeriodicGraph& p, int n_lo, int n_hi) {
  for (int n = n_lo; n <= n_hi; ++n)
    if (!is_planar(cyclic_quotient(p, n)).planar) return false;
  return true;
}

namespace {

struct Candidate {
  int seed;
  std::vector<int> edges;
  std::array<int, 2> ab;
  PeriodicGraph cover;
};

std::vector<Candidate> candidates(const std::vector<Multigraph>& seeds, const SearchOptions& opt) {
  std::vector<Candidate> out;
  const auto dirs = subtorus_directions(opt.max_ab);
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const auto& g = seeds[s];
    const int m = static_cast<int>(g.edges.size());
    const std::string tag = g.name.empty() ? "seed" + std::to_string(s) : g.name;
    for (int e = 0; e < m; ++e) {
      std::vector<Offset> off(m, Offset{0, 0});
      off[e] = {1, 0};
      out.push_back({static_cast<int>(s), {e}, {0, 0}, PeriodicGraph(g, 1, off, tag + "/e" + std::to_string(e))});
    }
    if (!opt.two_link) continue;
    for (int e1 = 0; e1 < m; ++e1)
      for (int e2 = e1 + 1; e2 < m; ++e2) {
        std::vector<Offset> off(m, Offset{0, 0});
        off[e1] = {1, 0};
        off[e2] = {0, 1};
        const std::string nm = tag + "/e" + std::to_string(e1) + "e" + std::to_string(e2);
        PeriodicGraph two(g, 2, off, nm);
        if (opt.rank == 2 && opt.include_rank2) out.push_back({static_cast<int>(s), {e1, e2}, {0, 0}, two});
        for (const auto& [a, b] : dirs) {
          if (opt.rank == 1 && !(a == 1 && std::abs(b) == 1)) continue;
          auto r = restrict_subtorus(two, a, b);
          r.name = nm + "/" + std::to_string(a) + "," + std::to_string(b);
          out.push_back({static_cast<int>(s), {e1, e2}, {a, b}, r});
        }
      }
  }
  return out;
}

}  // namespace

std::vector<CatalogEntry> search_covers(const std::vector<Multigraph>& seeds, const SearchOptions& opt) {
  for (const auto& g : seeds)
    if (!g.is_cubic()) throw std::invalid_argument("seeds must be cubic");
  auto cand = candidates(seeds, opt);
  std::vector<CatalogEntry> eval(cand.size());
  std::vector<char> keep(cand.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const auto& c = cand[i];
    if (!cover_is_connected(c.cover)) continue;
    bool planar = false;
    if (c.cover.rank == 1) planar = quotients_planar(c.cover);
    if (opt.planar_only && !planar) continue;
    auto b = bands_serial(c.cover, c.cover.rank == 1 ? opt.grid : opt.grid2d);
    CatalogEntry e;
    e.cover = c.cover;
    e.seed = c.seed;
    e.edges = c.edges;
    e.subtorus = c.ab;
    e.report = gap_report(b, opt.threshold);
    e.planar_quotients = planar;
    e.band_hash = band_hash(b);
    e.id = cover_id(c.cover);
    eval[i] = std::move(e);
    keep[i] = 1;
  }
  std::vector<CatalogEntry> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < cand.size(); ++i)
    if (keep[i] && seen.insert(eval[i].band_hash).second) out.push_back(std::move(eval[i]));
  return out;
}

bool spectrum_matches(const IntervalSet& s, const std::vector<Interval>& target, double tol) {
  const auto& iv = s.intervals();
  if (iv.size() != target.size()) return false;
  for (std::size_t i = 0; i < iv.size(); ++i)
    if (std::abs(iv[i].lo - target[i].lo) > tol || std::abs(iv[i].hi - target[i].hi) > tol) return false;
  return true;
}

bool in_gap(const GapReport& r, double x, double margin) {
  if (x < -3.0 || x > 3.0) return true;
  for (const auto& g : r.gaps.intervals()) {
    double lo = g.lo <= -3.0 ? -1e300 : g.lo;
    double hi = g.hi >= 3.0 ? 1e300 : g.hi;
    if (x > lo + margin && x < hi - margin) return true;
  }
  return false;
}

CoverageReport gap_coverage(const std::vector<CatalogEntry>& catalog, double lo, double hi, double step) {
  CoverageReport c;
  c.lo = lo;
  c.hi = hi;
  c.step = step;
  std::vector<double> xs;
  for (int i = 0;; ++i) {
    double x = lo + i * step;
    if (x > hi + 1e-12) break;
    xs.push_back(std::min(x, hi));
  }
  c.samples = static_cast<int>(xs.size());
  std::vector<std::vector<int>> hit(catalog.size());
  std::vector<char> covered(xs.size(), 0);
  for (std::size_t k = 0; k < catalog.size(); ++k)
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (in_gap(catalog[k].report, xs[i])) {
        hit[k].push_back(static_cast<int>(i));
        covered[i] = 1;
      }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (covered[i])
      ++c.covered;
    else if (c.uncovered.size() < 20)
      c.uncovered.push_back(xs[i]);
  }
  // Greedy set cover of the covered samples.
  std::vector<char> done(xs.size(), 0);
  int remaining = c.covered;
  while (remaining > 0) {
    std::size_t best = 0;
    int best_gain = 0;
    for (std::size_t k = 0; k < catalog.size(); ++k) {
      int gain = 0;
      for (int i : hit[k]) gain += !done[i];
      if (gain > best_gain) {
        best_gain = gain;
        best = k;
      }
    }
    if (best_gain == 0) break;
    for (int i : hit[best]) done[i] = 1;
    remaining -= best_gain;
    c.cover_set.push_back(catalog[best].id);
  }
  return c;
}

PlanarSearchResult search_planar_covers(const std::vector<Multigraph>& seeds, SearchOptions opt) {
  opt.planar_only = true;
  PlanarSearchResult r;
  r.covers = search_covers(seeds, opt);
  r.core = gap_coverage(r.covers, -2.0, 0.0);
  r.stretch = gap_coverage(r.covers, -3.0, 2.0 * std::sqrt(2.0) - 0.01);
  return r;
}

std::vector<Multigraph> seed_multigraphs(const std::vector<int>& sizes, bool allow_loops, bool allow_multi) {
  std::vector<Multigraph> out;
  for (int n : sizes) {
    auto gs = enumerate_cubic_multigraphs(n, allow_loops, allow_multi);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      if (gs[i].name.empty()) gs[i].name = "C" + std::to_string(n) + "_" + std::to_string(i);
      out.push_back(std::move(gs[i]));
    }
  }
  return out;
}

namespace {

nlohmann::json flat_json(const std::vector<FlatBand>& f) {
  auto j = nlohmann::json::array();
  for (const auto& b : f) j.push_back({{"value", b.value}, {"multiplicity", b.multiplicity}});
  return j;
}

}  // namespace

nlohmann::json to_json(const CatalogEntry& e) {
  nlohmann::json j;
  j["id"] = e.id;
  j["cover"] = to_json(e.cover);
  j["base"] = to_json(e.cover.base);
  j["offsets"] = to_json(e.cover)["offsets"];
  j["seed"] = e.seed;
  j["edges"] = e.edges;
  j["subtorus"] = {e.subtorus[0], e.subtorus[1]};
  j["spectrum"] = e.report.spectrum_estimate.to_json();
  j["gaps"] = e.report.gaps.to_json();
  j["flat_bands"] = flat_json(e.report.flat_bands);
  j["planar_quotients"] = e.planar_quotients;
  j["band_hash"] = e.band_hash;
  return j;
}

CatalogEntry catalog_entry_from_json(const nlohmann::json& j) {
  CatalogEntry e;
  e.id = j.at("id").get<std::string>();
  e.cover = periodic_from_json(j.at("cover"));
  e.seed = j.value("seed", 0);
  e.edges = j.value("edges", std::vector<int>{});
  auto ab = j.value("subtorus", std::vector<int>{0, 0});
  e.subtorus = {ab.at(0), ab.at(1)};
  e.report.spectrum_estimate = IntervalSet::from_json(j.at("spectrum"));
  e.report.gaps = IntervalSet::from_json(j.at("gaps"));
  for (const auto& f : j.value("flat_bands", nlohmann::json::array()))
    e.report.flat_bands.push_back({f.at("value").get<double>(), f.at("multiplicity").get<int>()});
  e.planar_quotients = j.value("planar_quotients", false);
  e.band_hash = j.value("band_hash", std::string{});
  return e;
}

void write_catalog(const std::vector<CatalogEntry>& catalog, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& e : catalog) out << to_json(e).dump() << "\n";
}

std::vector<CatalogEntry> read_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<CatalogEntry> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(catalog_entry_from_json(nlohmann::json::parse(line)));
  return out;
}

nlohmann::json to_json(const CoverageReport& c) {
  return {{"interval", {c.lo, c.hi}}, {"step", c.step},           {"samples", c.samples},
          {"covered", c.covered},     {"complete", c.complete()}, {"uncovered", c.uncovered},
          {"cover_set", c.cover_set}};
}

}  // namespace gapsets
