#pragma once

#include "gapsets/intervals.hpp"
#include "gapsets/periodic.hpp"

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

namespace gapsets {

struct SearchOptions {
  int rank = 2;           // 1: single links (plus (1,+-1) pairs when two_link); 2: edge pairs and their restrictions
  bool two_link = true;
  int grid = 64;          // samples for rank-1 covers
  int grid2d = 32;        // samples per axis for rank-2 covers
  int max_ab = 3;         // subtorus directions with |a|, |b| <= max_ab
  double threshold = kDefaultGapThreshold;
  bool include_rank2 = true;  // catalog the rank-2 covers themselves
  bool planar_only = false;   // keep only covers whose cyclic quotients n = 3..8 are planar
};

struct CatalogEntry {
  std::string id;
  PeriodicGraph cover;
  int seed = 0;
  std::vector<int> edges;           // linked base edges
  std::array<int, 2> subtorus{0, 0};  // (a, b) for restrictions of a rank-2 cover
  GapReport report;
  bool planar_quotients = false;
  std::string band_hash;
};

// Coprime directions (a, b), |a|, |b| <= m, one per +- pair, excluding the axes.
std::vector<std::array<int, 2>> subtorus_directions(int m);

std::string band_hash(const BandStructure& b);
bool quotients_planar(const PeriodicGraph& p, int n_lo = 3, int n_hi = 8);

// Exhaustive sweep over seeds; output order is (seed, edges, a, b), duplicates by band hash collapsed.
std::vector<CatalogEntry> search_covers(const std::vector<Multigraph>& seeds, const SearchOptions& opt);

// True when the estimate has exactly the target intervals with endpoints within tol.
bool spectrum_matches(const IntervalSet& s, const std::vector<Interval>& target, double tol);

// x lies strictly inside a reported gap, or outside [-3, 3].
bool in_gap(const GapReport& r, double x, double margin = 1e-9);

struct CoverageReport {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;
  int samples = 0;
  int covered = 0;
  std::vector<double> uncovered;  // first few uncovered sample points
  std::vector<std::string> cover_set;  // greedy subset of ids covering the covered samples
  bool complete() const { return covered == samples; }
};

CoverageReport gap_coverage(const std::vector<CatalogEntry>& catalog, double lo, double hi, double step = 0.01);

struct PlanarSearchResult {
  std::vector<CatalogEntry> covers;
  CoverageReport core;     // [-2, 0]
  CoverageReport stretch;  // [-3, 2 sqrt 2 - 0.01]
};

PlanarSearchResult search_planar_covers(const std::vector<Multigraph>& seeds, SearchOptions opt);

// All connected cubic multigraphs (loops and multi-edges allowed) on the given vertex counts.
std::vector<Multigraph> seed_multigraphs(const std::vector<int>& sizes, bool allow_loops = true, bool allow_multi = true);

nlohmann::json to_json(const CatalogEntry& e);
CatalogEntry catalog_entry_from_json(const nlohmann::json& j);
void write_catalog(const std::vector<CatalogEntry>& catalog, const std::string& path);
std::vector<CatalogEntry> read_catalog(const std::string& path);
nlohmann::json to_json(const CoverageReport& c);

}  // namespace gapsets
