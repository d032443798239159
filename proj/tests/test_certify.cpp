#include <doctest.h>

#include "gapsets/certify.hpp"
#include "gapsets/families.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

using namespace gapsets;

namespace {

constexpr double kPi = std::numbers::pi;

// Coefficients of prod (x - r) over real roots, lowest degree first.
std::vector<double> poly_from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> n(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      n[i + 1] += c[i];
      n[i] -= r * c[i];
    }
    c = n;
  }
  return c;
}

IntMatrix random_symmetric(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  IntMatrix m(n, IntVector(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m[i][j] = m[j][i] = d(rng);
  return m;
}

Eigen::MatrixXd to_eigen(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = m[i][j].convert_to<double>();
  return e;
}

std::vector<long> lambdas(const std::vector<ExactEigenpair>& pairs) {
  std::vector<long> out;
  for (const auto& p : pairs) out.push_back(p.lambda.convert_to<long>());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("char_poly matches the expansion of numerically computed eigenvalues") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    auto m = random_symmetric(n, rng);
    auto cp = char_poly(m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m));
    std::vector<double> roots(es.eigenvalues().data(), es.eigenvalues().data() + n);
    auto expect = poly_from_roots(roots);
    REQUIRE(cp.size() == expect.size());
    for (std::size_t i = 0; i < cp.size(); ++i) CHECK(cp[i].convert_to<double>() == doctest::Approx(expect[i]).epsilon(1e-6));
  }
}

TEST_CASE("integer_kernel vectors are annihilated and count the nullity") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);
    auto m = random_symmetric(n, rng);
    if (trial % 3 == 0) m[n - 1] = m[0];
    auto basis = integer_kernel(m);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(m));
    CHECK(static_cast<int>(basis.size()) == n - lu.rank());
    CHECK(rank(m) == static_cast<int>(lu.rank()));
    for (const auto& v : basis) {
      auto mv = multiply(m, v);
      CHECK(std::all_of(mv.begin(), mv.end(), [](const BigInt& x) { return x == 0; }));
      CHECK(std::any_of(v.begin(), v.end(), [](const BigInt& x) { return x != 0; }));
    }
  }
}

TEST_CASE("quadratic_split_roots on products of linear and quadratic factors") {
  // (x - 2)(x + 3)(x^2 + x - 4) = x^4 + 2x^3 - 9x^2 - 10x + 24
  auto roots = quadratic_split_roots({24, -10, -9, 2, 1});
  REQUIRE(roots);
  std::vector<double> vals;
  for (const auto& r : *roots) vals.push_back(r.value.to_double());
  std::sort(vals.begin(), vals.end());
  const double s = std::sqrt(17.0);
  REQUIRE(vals.size() == 4);
  CHECK(vals[0] == doctest::Approx(-3.0));
  CHECK(vals[1] == doctest::Approx((-1 - s) / 2));
  CHECK(vals[2] == doctest::Approx((-1 + s) / 2));
  CHECK(vals[3] == doctest::Approx(2.0));
  CHECK_FALSE(quadratic_split_roots({-2, 0, 0, 1}));
  // (x^2 - 2)(x^2 - 3) has no rational root and splits into two quadratics.
  auto q4 = quadratic_split_roots({6, 0, -5, 0, 1});
  REQUIRE(q4);
  std::vector<double> v4;
  for (const auto& r : *q4) v4.push_back(r.value.to_double());
  std::sort(v4.begin(), v4.end());
  REQUIRE(v4.size() == 4);
  CHECK(v4[0] == doctest::Approx(-std::sqrt(3.0)));
  CHECK(v4[1] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(v4[2] == doctest::Approx(std::sqrt(2.0)));
  CHECK(v4[3] == doctest::Approx(std::sqrt(3.0)));
  auto sq = quadratic_split_roots({1, -2, 1});
  REQUIRE(sq);
  REQUIRE(sq->size() == 1);
  CHECK((*sq)[0].multiplicity == 2);
  CHECK_THROWS(quadratic_split_roots({1, 2}));
}

TEST_CASE("quadratic irrational comparison is exact") {
  QuadraticIrrational q{-1, 1, 17};  // (-1 + sqrt 17) / 2 = 1.5615...
  CHECK(compare(q, Rational(3, 2)) > 0);
  CHECK(compare(q, Rational(8, 5)) < 0);
  CHECK(compare(QuadraticIrrational{4, 0, 0}, Rational(2)) == 0);
  CHECK(compare(QuadraticIrrational{-1, -1, 17}, Rational(-5, 2)) < 0);
  CHECK(q.to_string() == "(-1+sqrt(17))/2");
  CHECK(q.to_double() == doctest::Approx((-1 + std::sqrt(17.0)) / 2));
}

TEST_CASE("touch matrices are real symmetric integer matrices") {
  for (const auto& p : {wbar_a(), wbar_b()})
    for (auto t : {TouchAngle::Zero, TouchAngle::Pi}) {
      auto m = touch_matrix(p, t);
      Eigen::MatrixXcd z = twisted_adjacency_at(p, angle_value(t));
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
          CHECK(m[i][j] == m[j][i]);
          CHECK(m[i][j].convert_to<double>() == doctest::Approx(z(i, j).real()));
          CHECK(std::abs(z(i, j).imag()) < 1e-12);
        }
    }
}

TEST_CASE("W-bar-b touch point at pi certifies with eigenvalues 1, 1, -1, -1") {
  auto p = wbar_b();
  auto pairs = exact_eigenpairs(p, TouchAngle::Pi);
  CHECK(lambdas(pairs) == std::vector<long>{-1, -1, 1, 1});
  for (const auto& pr : pairs)
    for (const auto& x : pr.vector) CHECK(abs(x) <= 1);
  auto o = certify_touchpoint(p, TouchAngle::Pi, pairs);
  CHECK(o.certified);
  CHECK(o.failing_index == -1);
}

TEST_CASE("W-bar-a touch point at 0 certifies with eigenvalues 3, 1, 0, 0, -2, -2") {
  auto p = wbar_a();
  auto pairs = exact_eigenpairs(p, TouchAngle::Zero);
  CHECK(lambdas(pairs) == std::vector<long>{-2, -2, 0, 0, 1, 3});
  for (const auto& pr : pairs)
    for (const auto& x : pr.vector) CHECK(abs(x) <= 2);
  CHECK(certify_touchpoint(p, TouchAngle::Zero, pairs).certified);
}

TEST_CASE("a wrong eigenvalue claim is refused with its index") {
  auto p = wbar_b();
  auto pairs = exact_eigenpairs(p, TouchAngle::Pi);
  auto bad = pairs;
  bad[2].lambda = 2;
  auto o = certify_touchpoint(p, TouchAngle::Pi, bad);
  CHECK_FALSE(o.certified);
  CHECK(o.failing_index == 2);

  auto dup = pairs;
  dup[1] = dup[0];
  CHECK_FALSE(certify_touchpoint(p, TouchAngle::Pi, dup).certified);

  auto zero = pairs;
  for (auto& x : zero[3].vector) x = 0;
  auto oz = certify_touchpoint(p, TouchAngle::Pi, zero);
  CHECK_FALSE(oz.certified);
  CHECK(oz.failing_index == 3);

  auto shortlist = pairs;
  shortlist.pop_back();
  CHECK_FALSE(certify_touchpoint(p, TouchAngle::Pi, shortlist).certified);
}

TEST_CASE("claims at the wrong angle are refused") {
  auto p = wbar_b();
  CHECK_FALSE(certify_touchpoint(p, TouchAngle::Zero, exact_eigenpairs(p, TouchAngle::Pi)).certified);
}

TEST_CASE("transpose symmetry holds around the touch angles only") {
  const std::vector<double> deltas{0.0, 0.1, 0.7, 2.0};
  CHECK(verify_transpose_symmetry(wbar_a(), 0.0, deltas));
  CHECK(verify_transpose_symmetry(wbar_b(), kPi, deltas));
  CHECK(verify_transpose_symmetry(wbar_b(), kPi, {0.0}));
  CHECK_FALSE(verify_transpose_symmetry(wbar_a(), 0.3, {0.1}));
  CHECK_FALSE(verify_transpose_symmetry(wbar_b(), kPi + 0.3, {0.7}));
}

TEST_CASE("touch angles are band extrema and a shifted angle is not") {
  auto rb = verify_band_extremum(wbar_b(), kPi);
  CHECK(rb.ok);
  CHECK_FALSE(rb.numerical_failure);
  int dispersive = 0;
  for (const auto& b : rb.bands)
    if (!b.flat) {
      ++dispersive;
      CHECK(std::abs(b.d1) < kFirstDerivativeTol);
      CHECK(std::abs(b.d2_half) > kSecondDerivativeMin);
    }
  CHECK(dispersive == 2);
  CHECK(verify_band_extremum(wbar_a(), 0.0).ok);
  CHECK_FALSE(verify_band_extremum(wbar_b(), kPi + 0.3).ok);
  CHECK_FALSE(verify_band_extremum(wbar_a(), 0.3).ok);
}

TEST_CASE("W-bar-b dispersive bands have second derivative of the closed form") {
  // Differentiating lambda^2 = 5 + 4 cos theta twice gives lambda'' = 2 / lambda at theta = pi.
  auto rb = verify_band_extremum(wbar_b(), kPi);
  for (const auto& b : rb.bands)
    if (!b.flat) CHECK(b.d2_half == doctest::Approx(2.0 / b.value).epsilon(1e-3));
}

TEST_CASE("touch angles are located at pi and 0") {
  CHECK(locate_touch_angle(wbar_b()) == TouchAngle::Pi);
  CHECK(locate_touch_angle(wbar_a()) == TouchAngle::Zero);
}

TEST_CASE("certify_gap builds full certificates for both extremal covers") {
  auto ob = certify_gap(wbar_b(), -1, 1);
  REQUIRE(ob.certified);
  CHECK(ob.certificate.touch == TouchAngle::Pi);
  CHECK(ob.certificate.symmetry_ok);
  CHECK(ob.certificate.gap_lo.to_string() == "-1");
  CHECK(ob.certificate.gap_hi.to_string() == "1");

  auto oa = certify_gap(wbar_a(), -2, 0);
  REQUIRE(oa.certified);
  CHECK(oa.certificate.touch == TouchAngle::Zero);
  bool found = false;
  for (const auto& r : oa.certificate.opposite_spectrum)
    if (r.value == QuadraticIrrational{-1, 1, 17}) found = true;
  CHECK(found);
}

TEST_CASE("certify_gap refuses intervals that are not gaps") {
  CHECK_FALSE(certify_gap(wbar_b(), -1, 2).certified);
  CHECK_FALSE(certify_gap(wbar_a(), -3, 0).certified);
  CHECK_FALSE(certify_gap(wbar_a(), 0, 1).certified);
}

TEST_CASE("certificates re-verify from disk and tampering is refused") {
  auto dir = std::filesystem::temp_directory_path() / "gapsets_cert_test";
  std::filesystem::create_directories(dir);
  for (auto [p, lo, hi] : {std::tuple{wbar_b(), -1, 1}, std::tuple{wbar_a(), -2, 0}}) {
    auto o = certify_gap(p, lo, hi);
    REQUIRE(o.certified);
    auto path = dir / (o.certificate.cover_id + ".json");
    {
      std::ofstream out(path);
      out << to_json(o.certificate).dump(2);
    }
    nlohmann::json j;
    {
      std::ifstream in(path);
      in >> j;
    }
    CHECK(reverify(j).certified);

    auto bad_lambda = j;
    bad_lambda["eigenpairs"][0]["lambda"] = "7";
    CHECK_FALSE(reverify(bad_lambda).certified);

    auto bad_vec = j;
    auto& v = bad_vec["eigenpairs"][1]["vector"];
    for (auto& x : v)
      if (x.get<std::string>() != "0") {
        x = x.get<std::string>() == "1" ? "2" : "1";
        break;
      }
    CHECK_FALSE(reverify(bad_vec).certified);

    auto bad_id = j;
    bad_id["cover_id"] = "0000000000000000";
    CHECK_FALSE(reverify(bad_id).certified);

    auto bad_gap = j;
    bad_gap["gap"]["hi"] = {"6", "0", "0"};
    CHECK_FALSE(reverify(bad_gap).certified);

    auto bad_poly = j;
    bad_poly["char_poly"][0] = "99";
    CHECK_FALSE(reverify(bad_poly).certified);

    auto malformed = j;
    malformed.erase("eigenpairs");
    CHECK_FALSE(reverify(malformed).certified);
  }
  std::filesystem::remove_all(dir);
}
