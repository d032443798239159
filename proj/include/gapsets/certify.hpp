#pragma once

#include "gapsets/exact.hpp"
#include "gapsets/periodic.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gapsets {

enum class TouchAngle { Zero, Pi };

double angle_value(TouchAngle t);
std::string angle_name(TouchAngle t);

// Real integer matrix A(theta_t) of a rank-1 cover at theta_t in {0, pi}.
IntMatrix touch_matrix(const PeriodicGraph& p, TouchAngle t);

// Adjacency eigenvalues are algebraic integers, so rational ones are integers.
struct ExactEigenpair {
  BigInt lambda;
  IntVector vector;
};

// Integer kernel vectors of lambda I - A(theta_t) for every integer root of the
// characteristic polynomial; throws when some root is not an integer.
std::vector<ExactEigenpair> exact_eigenpairs(const PeriodicGraph& p, TouchAngle t);

struct BandDerivative {
  int band = 0;
  double value = 0.0;
  bool flat = false;
  double d1 = 0.0;
  double d2 = 0.0;       // central difference at step h
  double d2_half = 0.0;  // central difference at step h/2
  bool ok = false;
};

struct ExtremumReport {
  double theta = 0.0;
  double h = 0.0;
  std::vector<BandDerivative> bands;
  bool ok = false;
  bool numerical_failure = false;
};

inline constexpr double kFirstDerivativeTol = 1e-6;
inline constexpr double kSecondDerivativeMin = 1e-3;

ExtremumReport verify_band_extremum(const PeriodicGraph& p, double theta_t, double h = 1e-2);
bool verify_transpose_symmetry(const PeriodicGraph& p, double theta_t, const std::vector<double>& deltas);

// Sample where flat and dispersive bands come closest, snapped to 0 or pi.
TouchAngle locate_touch_angle(const PeriodicGraph& p, int grid = 512);

struct GapCertificate {
  std::string cover_id;
  PeriodicGraph cover;
  TouchAngle touch = TouchAngle::Zero;
  std::vector<ExactEigenpair> pairs;
  std::vector<BigInt> char_poly;
  std::vector<std::pair<BigInt, int>> flat_bands;
  std::vector<double> deltas;
  bool symmetry_ok = false;
  std::vector<BandDerivative> derivatives;
  bool has_gap = false;
  QuadraticIrrational gap_lo;
  QuadraticIrrational gap_hi;
  std::vector<ExactRoot> opposite_spectrum;  // exact spectrum at the other angle of {0, pi}
  int grid = 0;
  double clearance = 0.0;  // smallest sampled band distance into the gap (negative when inside)
};

struct CertifyOutcome {
  bool certified = false;
  int failing_index = -1;
  std::string reason;
  GapCertificate certificate;
};

// Exact checks of claimed eigenpairs at theta_t plus agreement with numerically detected flat bands.
CertifyOutcome certify_touchpoint(const PeriodicGraph& p, TouchAngle t, const std::vector<ExactEigenpair>& claimed,
                                  int grid = 512);

// Full chain for an integer gap (lo, hi): touch angle, exact eigenpairs, symmetry, extremum, clearance.
CertifyOutcome certify_gap(const PeriodicGraph& p, const BigInt& lo, const BigInt& hi, int grid = 512,
                           const std::vector<double>& deltas = {0.1, 0.7, 2.0});

nlohmann::json to_json(const GapCertificate& c);
GapCertificate certificate_from_json(const nlohmann::json& j);
// Exact re-verification from the serialized form only.
CertifyOutcome reverify(const nlohmann::json& j);

}  // namespace gapsets
