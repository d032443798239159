#include <doctest.h>

#include "gapsets/dynamics.hpp"
#include "gapsets/families.hpp"
#include "gapsets/tmap.hpp"
#include "gapsets/witness.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

using namespace gapsets;

namespace {

const std::vector<CatalogEntry>& catalog() {
  static const auto c = [] {
    SearchOptions o;
    o.include_rank2 = false;
    return search_planar_covers(seed_multigraphs({2, 4, 6}), o).covers;
  }();
  return c;
}

CatalogEntry single_entry(const PeriodicGraph& p) {
  CatalogEntry e;
  e.cover = p;
  e.id = cover_id(p);
  e.report = gap_report(bands(p, 256));
  e.planar_quotients = true;
  return e;
}

}  // namespace

TEST_CASE("f_image agrees with dense forward sampling") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3.5, 3.5);
  for (int t = 0; t < 200; ++t) {
    double a = u(rng), b = u(rng);
    Interval i{std::min(a, b), std::max(a, b)};
    auto img = f_image(i);
    double lo = 1e300, hi = -1e300;
    for (int s = 0; s <= 20000; ++s) {
      double y = f_apply(i.lo + (i.hi - i.lo) * s / 20000.0);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
    CHECK(img.lo <= lo + 1e-12);
    CHECK(img.hi >= hi - 1e-12);
    CHECK(img.lo == doctest::Approx(lo).epsilon(1e-6));
    CHECK(img.hi == doctest::Approx(hi).epsilon(1e-6));
  }
}

TEST_CASE("lapack eigenvalues agree with the Eigen solver") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g;
  for (int n : {1, 5, 40, 120}) {
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
    auto w = lapack_eigenvalues(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    REQUIRE(static_cast<int>(w.size()) == n);
    for (int i = 0; i < n; ++i) CHECK(w[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-10));
  }
}

TEST_CASE("xi = -1.5 is planned at k = 0 inside a gap") {
  auto p = plan_gap_witness(-1.5, 0.05, catalog());
  CHECK(p.k == 0);
  CHECK(p.gap.lo < -1.55);
  CHECK(p.gap.hi > -1.45);
  CHECK(catalog()[p.catalog_index].id == p.family_id);
  auto j = to_json(p);
  CHECK(j["family_id"] == p.family_id);
}

TEST_CASE("a point mapped onto -1 by f needs one step with the (-2,0) cover alone") {
  std::vector<CatalogEntry> only_a{single_entry(wbar_a())};
  CHECK(f_apply(2.0) == -1.0);
  auto p = plan_gap_witness(2.0, 0.01, only_a);
  CHECK(p.k == 1);
  CHECK(p.image.lo > -2.0);
  CHECK(p.image.hi < 0.0);
  auto r = realize_witness(p, only_a);
  CHECK(r.ok);
  CHECK(r.size == 3 * 6 * r.quotient_n);
}

TEST_CASE("the zero of f at (1 + sqrt 13) / 2 lands on a gap edge of the (-2,0) cover") {
  std::vector<CatalogEntry> only_a{single_entry(wbar_a())};
  const double xi = (1.0 + std::sqrt(13.0)) / 2.0;
  CHECK(std::abs(f_apply(xi)) < 1e-12);
  auto p = plan_gap_witness(xi, 0.01, only_a);
  CHECK(p.k >= 2);
}

TEST_CASE("a repelling fixed point in the spectrum exhausts the iteration budget") {
  std::vector<CatalogEntry> only_b{single_entry(wbar_b())};
  CHECK_THROWS_AS(plan_gap_witness(-1.0, 0.01, only_b), MaxIterExceeded);
  CHECK_THROWS_AS(plan_gap_witness(-1.0, 0.01, only_b, 5), MaxIterExceeded);
}

TEST_CASE("plan preconditions are enforced") {
  CHECK_THROWS_AS(plan_gap_witness(2.99, 0.05, catalog()), std::invalid_argument);
  CHECK_THROWS_AS(plan_gap_witness(-3.5, 0.05, catalog()), std::invalid_argument);
  CHECK_THROWS_AS(plan_gap_witness(0.0, 0.0, catalog()), std::invalid_argument);
  CHECK_THROWS_AS(plan_gap_witness(0.0, 0.05, {}), std::invalid_argument);
}

TEST_CASE("realized witnesses avoid xi and follow the spectral law of T") {
  for (double xi : {-2.9, -1.5, 0.5, 2.3, 2.9}) {
    auto p = plan_gap_witness(xi, 0.01, catalog());
    auto r = realize_witness(p, catalog());
    CHECK(r.ok);
    CHECK(r.size <= 10000);
    CHECK(r.nearest >= 0.01);
    const auto& e = catalog()[p.catalog_index];
    auto base = cyclic_quotient(e.cover, r.quotient_n);
    Spectrum predicted = spectrum(base);
    for (int k = 0; k < p.k; ++k) predicted = tmap_spectrum_predict(predicted);
    double nearest = 1e300;
    for (double x : predicted) nearest = std::min(nearest, std::abs(x - xi));
    CHECK(nearest == doctest::Approx(r.nearest).epsilon(1e-9));
  }
}

TEST_CASE("the neighbourhood of 2.9 is planned within 20 steps") {
  auto p = plan_gap_witness(2.9, 0.01, catalog());
  CHECK(p.k <= 20);
  Interval img{2.89, 2.91};
  for (int k = 0; k < p.k; ++k) img = f_image(img);
  CHECK(img.lo == doctest::Approx(p.image.lo));
  CHECK(img.hi == doctest::Approx(p.image.hi));
}
