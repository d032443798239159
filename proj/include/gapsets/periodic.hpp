#pragma once

#include "gapsets/intervals.hpp"
#include "gapsets/multigraph.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace gapsets {

using Offset = std::array<int, 2>;

// Edge e = (o,t) of the base joins (o,c) to (t,c + offset[e]) for every cell c.
struct PeriodicGraph {
  Multigraph base;
  int rank = 1;
  std::vector<Offset> offsets;
  std::string name;

  PeriodicGraph() = default;
  PeriodicGraph(Multigraph b, int r, std::vector<Offset> off, std::string nm = {});
  int links() const;
};

Eigen::MatrixXcd twisted_adjacency(const PeriodicGraph& p, const std::vector<std::complex<double>>& z);
Eigen::MatrixXcd twisted_adjacency_at(const PeriodicGraph& p, double theta1, double theta2 = 0.0);
Spectrum twisted_eigenvalues(const PeriodicGraph& p, double theta1, double theta2 = 0.0);

struct BandStructure {
  int rank = 1;
  int grid = 0;
  std::vector<std::array<double, 2>> angles;
  Eigen::MatrixXd values;  // one row per sample, ascending within each row
};

// Sample angles -pi + 2 pi i / N, so 0 and (for even N) -pi are on the grid.
BandStructure bands(const PeriodicGraph& p, int grid);
BandStructure bands_serial(const PeriodicGraph& p, int grid);
std::string bands_csv(const BandStructure& b);

// Line (theta1, theta2) = t (a, b) through the origin; the rank-1 band at t equals the rank-2 band there.
PeriodicGraph restrict_subtorus(const PeriodicGraph& p, int a, int b);

struct FlatBand {
  double value = 0.0;
  int multiplicity = 0;
};

struct GapReport {
  IntervalSet spectrum_estimate;
  IntervalSet gaps;
  std::vector<FlatBand> flat_bands;
};

inline constexpr double kDefaultGapThreshold = 0.05;
inline constexpr double kFlatTolerance = 1e-9;

GapReport gap_report(const BandStructure& b, double threshold = kDefaultGapThreshold);
std::vector<FlatBand> detect_flat_bands(const BandStructure& b, double tol = kFlatTolerance);

// Wrap n1 (and n2 for rank 2) copies of the cell; vertex (v, c) has index v + base.n * c.
Multigraph cyclic_quotient(const PeriodicGraph& p, int n);
Multigraph torus_quotient(const PeriodicGraph& p, int n1, int n2);
bool cover_is_connected(const PeriodicGraph& p);

struct QuotientResult {
  Multigraph graph;
  bool has_loops = false;
  bool has_half_loops = false;
  bool has_multi = false;
  int group_order = 1;
};

// Orbit quotient of a free action; loops fold to loops, flipped edges to half-loops.
QuotientResult quotient_by_automorphism(const Multigraph& g, const std::vector<std::vector<int>>& perms);
bool is_automorphism(const Multigraph& g, const std::vector<int>& perm);

// FNV-1a hash (16 hex digits) of the canonical base with offsets, minimized over
// base automorphisms and per-axis sign flips, so isomorphic covers share an id.
std::string cover_id(const PeriodicGraph& p);

nlohmann::json to_json(const PeriodicGraph& p);
PeriodicGraph periodic_from_json(const nlohmann::json& j);

}  // namespace gapsets
