#pragma once

#include "gapsets/intervals.hpp"
#include "gapsets/search.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace gapsets {

struct MaxIterExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact image of a closed interval under f(x) = x^2 - x - 3.
Interval f_image(const Interval& i);

struct WitnessPlan {
  double xi = 0.0;
  double delta = 0.0;
  int k = 0;
  std::string family_id;
  int catalog_index = -1;
  Interval image;  // f^k([xi - delta, xi + delta])
  Interval gap;    // catalog gap containing the image
};

// Smallest k <= max_k with f^k of the delta-neighbourhood strictly inside a catalog gap;
// ties go to the smallest base cell, then catalog order.
WitnessPlan plan_gap_witness(double xi, double delta, const std::vector<CatalogEntry>& catalog, int max_k = 64);

struct WitnessRealization {
  int quotient_n = 0;
  int size = 0;
  double nearest = 0.0;  // distance from xi to the witness spectrum
  bool planar_base = false;
  bool ok = false;       // nearest >= delta
};

// Builds T^k(cyclic_quotient(P, n)) with the largest n in [3, quotient_n] keeping size <= max_size
// and checks its spectrum by a dense eigensolve.
WitnessRealization realize_witness(const WitnessPlan& plan, const std::vector<CatalogEntry>& catalog,
                                   int quotient_n = 4, int max_size = 10000);

// Eigenvalues of a symmetric matrix via LAPACK dsyevr (values only).
std::vector<double> lapack_eigenvalues(const Eigen::MatrixXd& a);

nlohmann::json to_json(const WitnessPlan& p);
nlohmann::json to_json(const WitnessRealization& r);

}  // namespace gapsets
