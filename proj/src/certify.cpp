#include "gapsets/certify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace gapsets {

namespace {

constexpr double kPi = std::numbers::pi;

CertifyOutcome refuse(GapCertificate c, int index, std::string reason) {
  CertifyOutcome o;
  o.certified = false;
  o.failing_index = index;
  o.reason = std::move(reason);
  o.certificate = std::move(c);
  return o;
}

std::vector<BigInt> product_poly(const std::vector<BigInt>& roots) {
  std::vector<BigInt> p{1};
  for (const BigInt& r : roots) {
    std::vector<BigInt> q(p.size() + 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= r * p[i];
    }
    p = std::move(q);
  }
  return p;
}

// Exact checks shared by certification and re-verification.
CertifyOutcome check_pairs(GapCertificate c) {
  const IntMatrix a = touch_matrix(c.cover, c.touch);
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(c.pairs.size()) != n) return refuse(c, -1, "claimed pair count differs from matrix size");
  for (int i = 0; i < n; ++i) {
    const auto& pr = c.pairs[i];
    if (static_cast<int>(pr.vector.size()) != n) return refuse(c, i, "vector length mismatch");
    if (std::all_of(pr.vector.begin(), pr.vector.end(), [](const BigInt& x) { return x == 0; }))
      return refuse(c, i, "zero vector");
    auto av = multiply(a, pr.vector);
    for (int k = 0; k < n; ++k)
      if (av[k] != pr.lambda * pr.vector[k]) return refuse(c, i, "A v != lambda v");
  }
  std::map<BigInt, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[c.pairs[i].lambda].push_back(i);
  for (const auto& [lambda, idx] : groups) {
    IntMatrix stacked;
    for (int i : idx) stacked.push_back(c.pairs[i].vector);
    if (rank(stacked) != static_cast<int>(idx.size())) return refuse(c, idx.back(), "dependent vectors for one eigenvalue");
    int nullity = n - rank(shifted(a, lambda));
    if (nullity != static_cast<int>(idx.size())) return refuse(c, idx.front(), "multiplicity differs from nullity");
  }
  std::vector<BigInt> roots;
  for (const auto& pr : c.pairs) roots.push_back(pr.lambda);
  auto cp = char_poly(a);
  if (product_poly(roots) != cp) return refuse(c, -1, "claimed multiset differs from characteristic polynomial");
  if (!c.char_poly.empty() && c.char_poly != cp) return refuse(c, -1, "stored characteristic polynomial is wrong");
  c.char_poly = cp;
  for (const auto& [value, mult] : c.flat_bands) {
    auto it = groups.find(value);
    if (it == groups.end() || static_cast<int>(it->second.size()) < mult)
      return refuse(c, -1, "flat band value missing from the claimed eigenvalues");
  }
  CertifyOutcome ok;
  ok.certified = true;
  ok.certificate = std::move(c);
  return ok;
}

CertifyOutcome check_gap_exact(CertifyOutcome o) {
  auto& c = o.certificate;
  if (!o.certified || !c.has_gap) return o;
  if (c.gap_lo.b != 0 || c.gap_hi.b != 0) return refuse(c, -1, "gap endpoints must be integers");
  BigInt lo = c.gap_lo.a / 2, hi = c.gap_hi.a / 2;
  if (!(lo < hi)) return refuse(c, -1, "empty gap");
  bool lo_hit = false, hi_hit = false;
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    const auto& l = c.pairs[i].lambda;
    if (l > lo && l < hi) return refuse(c, static_cast<int>(i), "eigenvalue inside the gap at the touch angle");
    lo_hit |= l == lo;
    hi_hit |= l == hi;
  }
  if (!lo_hit || !hi_hit) return refuse(c, -1, "gap endpoint is not an exact touch eigenvalue");
  auto is_flat = [&](const BigInt& v) {
    return std::any_of(c.flat_bands.begin(), c.flat_bands.end(), [&](const auto& f) { return f.first == v; });
  };
  if (!is_flat(lo) && !is_flat(hi)) return refuse(c, -1, "neither gap endpoint is a flat band");
  for (const auto& r : c.opposite_spectrum)
    if (compare(r.value, Rational(lo)) > 0 && compare(r.value, Rational(hi)) < 0)
      return refuse(c, -1, "eigenvalue inside the gap at the opposite angle");
  return o;
}

QuadraticIrrational integer_qi(const BigInt& x) { return {2 * x, 0, 0}; }

}  // namespace

double angle_value(TouchAngle t) { return t == TouchAngle::Zero ? 0.0 : kPi; }

std::string angle_name(TouchAngle t) { return t == TouchAngle::Zero ? "0" : "pi"; }

IntMatrix touch_matrix(const PeriodicGraph& p, TouchAngle t) {
  if (p.rank != 1) throw std::invalid_argument("touch matrices need a rank-1 cover");
  const int n = p.base.n;
  IntMatrix a(n, IntVector(n, 0));
  for (std::size_t e = 0; e < p.base.edges.size(); ++e) {
    auto [o, w] = p.base.edges[e];
    int k = p.offsets[e][0];
    int z = (t == TouchAngle::Pi && (k % 2 != 0)) ? -1 : 1;
    a[o][w] += z;
    a[w][o] += z;
  }
  for (int v : p.base.half_loops) a[v][v] += 1;
  return a;
}

std::vector<ExactEigenpair> exact_eigenpairs(const PeriodicGraph& p, TouchAngle t) {
  auto a = touch_matrix(p, t);
  auto roots = quadratic_split_roots(char_poly(a));
  if (!roots) throw std::runtime_error("characteristic polynomial does not split");
  std::vector<ExactEigenpair> out;
  for (const auto& r : *roots) {
    if (r.value.b != 0 || r.value.a % 2 != 0) throw std::runtime_error("non-integer eigenvalue at the touch angle");
    BigInt lambda = r.value.a / 2;
    auto kernel = integer_kernel(shifted(a, lambda));
    if (static_cast<int>(kernel.size()) != r.multiplicity) throw std::runtime_error("kernel dimension mismatch");
    for (auto& v : kernel) out.push_back({lambda, std::move(v)});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lambda < y.lambda; });
  return out;
}

ExtremumReport verify_band_extremum(const PeriodicGraph& p, double theta_t, double h) {
  if (p.rank != 1) throw std::invalid_argument("band extremum check needs a rank-1 cover");
  ExtremumReport r;
  r.theta = theta_t;
  r.h = h;
  auto s0 = twisted_eigenvalues(p, theta_t);
  auto sp = twisted_eigenvalues(p, theta_t + h), sm = twisted_eigenvalues(p, theta_t - h);
  auto hp = twisted_eigenvalues(p, theta_t + h / 2), hm = twisted_eigenvalues(p, theta_t - h / 2);
  r.ok = true;
  for (std::size_t j = 0; j < s0.size(); ++j) {
    BandDerivative b;
    b.band = static_cast<int>(j);
    b.value = s0[j];
    b.flat = std::abs(sp[j] - s0[j]) < 1e-10 && std::abs(sm[j] - s0[j]) < 1e-10;
    b.d1 = (sp[j] - sm[j]) / (2 * h);
    b.d2 = (sp[j] - 2 * s0[j] + sm[j]) / (h * h);
    b.d2_half = (hp[j] - 2 * s0[j] + hm[j]) / (h * h / 4);
    if (b.flat) {
      b.ok = true;
    } else {
      double scale = std::max(std::abs(b.d2_half), kSecondDerivativeMin);
      if (std::abs(b.d2 - b.d2_half) > 0.05 * scale) r.numerical_failure = true;
      b.ok = std::abs(b.d1) < kFirstDerivativeTol && std::abs(b.d2_half) > kSecondDerivativeMin;
    }
    r.ok = r.ok && b.ok;
    r.bands.push_back(b);
  }
  r.ok = r.ok && !r.numerical_failure;
  return r;
}

bool verify_transpose_symmetry(const PeriodicGraph& p, double theta_t, const std::vector<double>& deltas) {
  if (p.rank != 1) throw std::invalid_argument("transpose symmetry check needs a rank-1 cover");
  for (double d : deltas) {
    auto plus = twisted_adjacency_at(p, theta_t + d);
    auto minus = twisted_adjacency_at(p, theta_t - d);
    if ((plus - minus.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
  }
  return true;
}

TouchAngle locate_touch_angle(const PeriodicGraph& p, int grid) {
  auto b = bands(p, grid);
  auto flats = detect_flat_bands(b);
  double best = 1e300, best_theta = 0.0;
  for (int s = 0; s < b.values.rows(); ++s) {
    std::vector<double> vals;
    for (int j = 0; j < b.values.cols(); ++j) vals.push_back(b.values(s, j));
    for (const auto& f : flats)
      for (int m = 0; m < f.multiplicity; ++m) {
        auto it = std::min_element(vals.begin(), vals.end(),
                                   [&](double x, double y) { return std::abs(x - f.value) < std::abs(y - f.value); });
        if (it != vals.end()) vals.erase(it);
      }
    for (const auto& f : flats)
      for (double x : vals) {
        double d = std::abs(x - f.value);
        if (d < best - 1e-12) {
          best = d;
          best_theta = b.angles[s][0];
        }
      }
  }
  double to_zero = std::abs(std::remainder(best_theta, 2 * kPi));
  double to_pi = std::abs(std::remainder(best_theta - kPi, 2 * kPi));
  return to_zero <= to_pi ? TouchAngle::Zero : TouchAngle::Pi;
}

CertifyOutcome certify_touchpoint(const PeriodicGraph& p, TouchAngle t, const std::vector<ExactEigenpair>& claimed,
                                  int grid) {
  GapCertificate c;
  c.cover_id = cover_id(p);
  c.cover = p;
  c.touch = t;
  c.pairs = claimed;
  c.grid = grid;
  auto flats = detect_flat_bands(bands(p, grid));
  for (const auto& f : flats) {
    double r = std::round(f.value);
    if (std::abs(r - f.value) > 1e-9) return refuse(c, -1, "flat band value is not an integer");
    c.flat_bands.push_back({BigInt(static_cast<long long>(r)), f.multiplicity});
  }
  return check_pairs(std::move(c));
}

CertifyOutcome certify_gap(const PeriodicGraph& p, const BigInt& lo, const BigInt& hi, int grid,
                           const std::vector<double>& deltas) {
  TouchAngle t = locate_touch_angle(p, grid);
  std::vector<ExactEigenpair> pairs;
  try {
    pairs = exact_eigenpairs(p, t);
  } catch (const std::exception& e) {
    GapCertificate c;
    c.cover = p;
    c.touch = t;
    return refuse(c, -1, e.what());
  }
  auto o = certify_touchpoint(p, t, pairs, grid);
  if (!o.certified) return o;
  auto& c = o.certificate;
  c.deltas = deltas;
  c.symmetry_ok = verify_transpose_symmetry(p, angle_value(t), deltas);
  if (!c.symmetry_ok) return refuse(c, -1, "transpose symmetry fails");
  auto ext = verify_band_extremum(p, angle_value(t));
  c.derivatives = ext.bands;
  if (ext.numerical_failure) return refuse(c, -1, "inconsistent Richardson pair");
  if (!ext.ok) return refuse(c, -1, "touch angle is not a band extremum");
  const double dlo = lo.convert_to<double>(), dhi = hi.convert_to<double>();
  for (const auto& b : ext.bands) {
    if (b.flat) continue;
    if (std::abs(b.value - dlo) < 1e-9 && b.d2_half > 0) return refuse(c, b.band, "band enters the gap above its lower end");
    if (std::abs(b.value - dhi) < 1e-9 && b.d2_half < 0) return refuse(c, b.band, "band enters the gap below its upper end");
  }
  auto other = t == TouchAngle::Zero ? TouchAngle::Pi : TouchAngle::Zero;
  auto roots = quadratic_split_roots(char_poly(touch_matrix(p, other)));
  if (roots) c.opposite_spectrum = *roots;
  c.has_gap = true;
  c.gap_lo = integer_qi(lo);
  c.gap_hi = integer_qi(hi);
  auto bs = bands(p, grid);
  double clearance = 1e300;
  for (int s = 0; s < bs.values.rows(); ++s)
    for (int j = 0; j < bs.values.cols(); ++j) {
      double x = bs.values(s, j);
      clearance = std::min(clearance, std::max(dlo - x, x - dhi));
    }
  c.clearance = clearance;
  if (clearance < -1e-9) return refuse(c, -1, "sampled band inside the gap");
  return check_gap_exact(std::move(o));
}

nlohmann::json to_json(const GapCertificate& c) {
  nlohmann::json j;
  j["cover_id"] = c.cover_id;
  j["cover"] = to_json(c.cover);
  j["touch_angle"] = angle_name(c.touch);
  for (const auto& pr : c.pairs) {
    nlohmann::json v = nlohmann::json::array();
    for (const auto& x : pr.vector) v.push_back(to_string(x));
    j["eigenpairs"].push_back({{"lambda", to_string(pr.lambda)}, {"vector", v}});
  }
  for (const auto& x : c.char_poly) j["char_poly"].push_back(to_string(x));
  j["flat_bands"] = nlohmann::json::array();
  for (const auto& [v, m] : c.flat_bands) j["flat_bands"].push_back({{"value", to_string(v)}, {"multiplicity", m}});
  j["symmetry"] = {{"deltas", c.deltas}, {"ok", c.symmetry_ok}};
  j["derivatives"] = nlohmann::json::array();
  for (const auto& b : c.derivatives)
    j["derivatives"].push_back({{"band", b.band}, {"value", b.value}, {"flat", b.flat}, {"d1", b.d1},
                                {"d2", b.d2_half}, {"sign", b.flat ? 0 : (b.d2_half > 0 ? 1 : -1)}});
  auto qi = [](const QuadraticIrrational& q) {
    return nlohmann::json::array({to_string(q.a), to_string(q.b), to_string(q.d)});
  };
  if (c.has_gap) j["gap"] = {{"lo", qi(c.gap_lo)}, {"hi", qi(c.gap_hi)}, {"text", "(" + c.gap_lo.to_string() + "," + c.gap_hi.to_string() + ")"}};
  j["opposite_spectrum"] = nlohmann::json::array();
  for (const auto& r : c.opposite_spectrum)
    j["opposite_spectrum"].push_back({{"value", qi(r.value)}, {"multiplicity", r.multiplicity}, {"text", r.value.to_string()}});
  j["grid"] = c.grid;
  j["clearance"] = c.clearance;
  return j;
}

GapCertificate certificate_from_json(const nlohmann::json& j) {
  GapCertificate c;
  c.cover_id = j.at("cover_id").get<std::string>();
  c.cover = periodic_from_json(j.at("cover"));
  std::string t = j.at("touch_angle").get<std::string>();
  if (t != "0" && t != "pi") throw std::invalid_argument("touch angle must be 0 or pi");
  c.touch = t == "0" ? TouchAngle::Zero : TouchAngle::Pi;
  for (const auto& e : j.at("eigenpairs")) {
    ExactEigenpair pr;
    pr.lambda = parse_bigint(e.at("lambda").get<std::string>());
    for (const auto& x : e.at("vector")) pr.vector.push_back(parse_bigint(x.get<std::string>()));
    c.pairs.push_back(std::move(pr));
  }
  for (const auto& x : j.at("char_poly")) c.char_poly.push_back(parse_bigint(x.get<std::string>()));
  for (const auto& f : j.at("flat_bands"))
    c.flat_bands.push_back({parse_bigint(f.at("value").get<std::string>()), f.at("multiplicity").get<int>()});
  c.deltas = j.at("symmetry").at("deltas").get<std::vector<double>>();
  c.symmetry_ok = j.at("symmetry").at("ok").get<bool>();
  for (const auto& d : j.at("derivatives")) {
    BandDerivative b;
    b.band = d.at("band").get<int>();
    b.value = d.at("value").get<double>();
    b.flat = d.at("flat").get<bool>();
    b.d1 = d.at("d1").get<double>();
    b.d2_half = d.at("d2").get<double>();
    c.derivatives.push_back(b);
  }
  auto qi = [](const nlohmann::json& a) {
    return QuadraticIrrational{parse_bigint(a.at(0).get<std::string>()), parse_bigint(a.at(1).get<std::string>()),
                               parse_bigint(a.at(2).get<std::string>())};
  };
  if (j.contains("gap")) {
    c.has_gap = true;
    c.gap_lo = qi(j["gap"].at("lo"));
    c.gap_hi = qi(j["gap"].at("hi"));
  }
  for (const auto& r : j.at("opposite_spectrum")) c.opposite_spectrum.push_back({qi(r.at("value")), r.at("multiplicity").get<int>()});
  c.grid = j.value("grid", 0);
  c.clearance = j.value("clearance", 0.0);
  return c;
}

CertifyOutcome reverify(const nlohmann::json& j) {
  GapCertificate c;
  try {
    c = certificate_from_json(j);
  } catch (const std::exception& e) {
    return refuse(c, -1, std::string("malformed certificate: ") + e.what());
  }
  if (c.cover_id != cover_id(c.cover)) return refuse(c, -1, "cover id does not match the stored cover");
  if (!c.symmetry_ok) return refuse(c, -1, "certificate records a failed symmetry check");
  auto other = c.touch == TouchAngle::Zero ? TouchAngle::Pi : TouchAngle::Zero;
  if (!c.opposite_spectrum.empty()) {
    auto roots = quadratic_split_roots(char_poly(touch_matrix(c.cover, other)));
    if (!roots || roots->size() != c.opposite_spectrum.size()) return refuse(c, -1, "opposite-angle spectrum mismatch");
    for (std::size_t i = 0; i < roots->size(); ++i)
      if (!((*roots)[i].value == c.opposite_spectrum[i].value) ||
          (*roots)[i].multiplicity != c.opposite_spectrum[i].multiplicity)
        return refuse(c, -1, "opposite-angle spectrum mismatch");
  }
  return check_gap_exact(check_pairs(std::move(c)));
}

}  // namespace gapsets
