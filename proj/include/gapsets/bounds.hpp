#pragma once

#include "gapsets/intervals.hpp"
#include "gapsets/multigraph.hpp"

#include <json.hpp>

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gapsets {

// Root of w^2 - lambda w + 1 = 0 with Im w >= 0; |w| = 1 for |lambda| <= 2.
std::complex<double> wave_root(double lambda);

bool is_hamilton_path(const Multigraph& g, const std::vector<int>& path);
// Depth-first search with a fewest-free-neighbours ordering; nullopt when the budget runs out.
std::optional<std::vector<int>> find_hamilton_path(const Multigraph& g, long budget = 2000000);

// Values w^k on the k-th support vertex (1-based), zero elsewhere.
struct TestFunction {
  std::vector<int> support;
  std::complex<double> w;
  double lambda = 0.0;
  std::vector<std::complex<double>> values(int n) const;
};

struct RayleighReport {
  double rayleigh = 0.0;        // |A f - lambda f|^2 / |f|^2
  double bound = 0.0;           // the proposition or theorem bound on the Rayleigh quotient
  double distance_bound = 0.0;  // sqrt(rayleigh)
  bool holds = false;           // rayleigh <= bound
  std::vector<double> residuals;  // |A f - lambda f|(v) for every vertex
};

std::vector<double> residuals(const Multigraph& g, const TestFunction& f);

// Hamilton path test function; bound 1 + 16/|X|. Throws for |lambda| > 2 or a non-Hamilton path.
RayleighReport hampath_bound(const Multigraph& x, double lambda, const std::vector<int>& path);

enum class AttachKind { A, B, C, D };
// Attachment pattern of an off-geodesic vertex, from the positions of its geodesic neighbours.
std::optional<AttachKind> attach_kind(const std::vector<int>& positions);

struct Segment {
  int lo = 0;
  int hi = 0;               // geodesic index range [lo, hi]
  std::vector<int> extra;   // vertices of the segment off the geodesic
  std::vector<int> path;    // Hamilton path of the segment, ending at g[hi]
  int type = 12;            // 1..11 from the segment table, 12 for a plain run
  std::string signature;
  int size() const { return hi - lo + 1 + static_cast<int>(extra.size()); }
};

struct SegmentDecomposition {
  std::vector<int> geodesic;
  std::vector<Segment> segments;
  std::vector<int> neighborhood;  // Hamilton path of N_t
  bool condition1 = false;
  bool condition2 = false;
  bool ok = false;
  std::string failure;  // offending local configuration when !ok
};

inline constexpr double kSqrt2 = 1.4142135623730951;

// Segment-table name ("I".."XII") for a type index.
std::string segment_type_name(int type);

SegmentDecomposition decompose_along(const Multigraph& x, const std::vector<int>& geodesic);
// Tries diameter geodesics until one decomposes.
SegmentDecomposition decompose_geodesic(const Multigraph& x);

struct SegmentAccount {
  int segment = 0;
  double residual_sum = 0.0;
  double budget = 0.0;  // |S|, plus 9 for each end of the N_t path inside S
  bool ok = false;
};

std::vector<SegmentAccount> segment_accounts(const Multigraph& x, const SegmentDecomposition& d, double lambda);

struct GeodesicBoundReport {
  SegmentDecomposition decomposition;
  RayleighReport rayleigh;
  std::vector<SegmentAccount> accounts;
  bool accounting_ok = false;
  double L = 0.0;  // log2(|X| / 3)
};

// Neighbourhood test function; bound 1 + 18/L(X). Throws for |lambda| > sqrt 2.
GeodesicBoundReport geodesic_bound(const Multigraph& x, double lambda);
GeodesicBoundReport geodesic_bound(const Multigraph& x, double lambda, const SegmentDecomposition& d);

double length_scale(const Multigraph& x);

enum class FeketeVerdict { Contained, SpectrumNotContained };

struct FeketeResult {
  FeketeVerdict verdict = FeketeVerdict::Contained;
  int k = 0;  // |F|
  int diameter = 0;
  int x0 = -1;
  int y0 = -1;
  std::vector<long long> path_counts;  // (A^m)[x0,y0] for m = 0..k
  double residual = 0.0;               // max |P(A)| entry when checked directly
};

FeketeResult fekete_finiteness(const Multigraph& x, const std::vector<double>& f);

struct WidenEvidence {
  std::string side;  // "left" or "right"
  double epsilon = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double midpoint = 0.0;
  bool intersects = false;     // some member spectrum meets the widened interval
  int witness_n = 0;
  double witness_eigenvalue = 0.0;
  std::string method;          // "geodesic", "hampath", or "inconclusive at edge"
  double radius_at_largest = 0.0;  // distance bound for the largest member
  double required_L = 0.0;     // L(X) beyond which the bound forces intersection
};

struct GapAudit {
  double lo = 0.0;
  double hi = 0.0;
  std::string family;
  int n_min = 0;
  int n_max = 0;
  bool achieved = false;
  std::vector<std::pair<int, double>> violations;  // (member index, eigenvalue inside the gap)
  std::vector<WidenEvidence> widened;
};

GapAudit audit_gap_interval(double lo, double hi, const std::string& family_name,
                            const std::function<Multigraph(int)>& family, int n_min, int n_max, double epsilon = 0.1);

nlohmann::json to_json(const GapAudit& a);
nlohmann::json to_json(const SegmentDecomposition& d);

}  // namespace gapsets
