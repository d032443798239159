#pragma once

#include "gapsets/intervals.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace gapsets {

inline double f_apply(double x) { return x * x - x - 3.0; }

// Roots (1 - s)/2 <= (1 + s)/2 of x^2 - x - 3 = y with s = sqrt(13 + 4y); empty when y < -13/4.
std::optional<std::pair<double, double>> f_preimage(double y);

struct CantorApprox {
  int level = 0;
  IntervalSet intervals;               // f^{-m}([-3,3]), 2^m components
  std::vector<double> isolated_points;  // union of f^{-k}(0) for k <= m
};

inline constexpr int kMaxPreimageLevel = 20;

CantorApprox preimage_intervals(int m);

struct Itinerary {
  std::vector<int> bits;  // bit j is 0 when the (j-1)-th iterate lies in [-2,0], 1 when in [1,3]
  int escape_step = -1;   // smallest k with f^k(xi) outside [-3,3], or -1 if none within m steps
  bool escaped() const { return escape_step >= 0; }
};

Itinerary itinerary(double xi, int m);

enum class AKind { InLambda, IsolatedPoint, Outside };

struct AMembership {
  AKind kind = AKind::Outside;
  int depth = 0;  // k for IsolatedPoint, escape step for Outside, m for InLambda
};

inline constexpr int kMaxMembershipDepth = 12;

// Forward classification with tolerance tol * 3^j at iterate j.
AMembership a_membership(double xi, int m, double tol);

// f^{-1}(K) together with the points 0 and -2.
IntervalSet pullback_spectral_set(const IntervalSet& k);

struct CapacityResult {
  std::vector<double> points;  // approximate Fekete points, sorted
  double nth_diameter = 0.0;   // (prod_{i<j} |x_i - x_j|)^{2/(n(n-1))}
  double estimate = 0.0;       // discrete energy with per-point cell self-energy correction
};

CapacityResult fekete_capacity(const IntervalSet& s, int npoints, int sweeps = 200);
CapacityResult fekete_capacity_serial(const IntervalSet& s, int npoints, int sweeps = 200);
double capacity_estimate(const IntervalSet& s, int npoints);

}  // namespace gapsets
