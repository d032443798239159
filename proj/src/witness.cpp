#include "gapsets/witness.hpp"

#include "gapsets/dynamics.hpp"
#include "gapsets/tmap.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gapsets {

Interval f_image(const Interval& i) {
  double a = f_apply(i.lo), b = f_apply(i.hi);
  double lo = std::min(a, b), hi = std::max(a, b);
  if (i.lo <= 0.5 && 0.5 <= i.hi) lo = f_apply(0.5);
  return {lo, hi};
}

namespace {

bool inside_gap(const Interval& img, const Interval& g) {
  const double inf = std::numeric_limits<double>::infinity();
  double lo = g.lo <= -3.0 ? -inf : g.lo;
  double hi = g.hi >= 3.0 ? inf : g.hi;
  return lo < img.lo && img.hi < hi;
}

}  // namespace

WitnessPlan plan_gap_witness(double xi, double delta, const std::vector<CatalogEntry>& catalog, int max_k) {
  if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
  if (xi < -3.0 || xi > 3.0 - delta) throw std::invalid_argument("xi must lie in [-3, 3 - delta]");
  if (catalog.empty()) throw std::invalid_argument("empty catalog");
  Interval img{xi - delta, xi + delta};
  for (int k = 0; k <= max_k; ++k) {
    int best = -1;
    Interval best_gap{};
    for (std::size_t c = 0; c < catalog.size(); ++c) {
      const auto& e = catalog[c];
      if (best >= 0 && e.cover.base.n >= catalog[best].cover.base.n) continue;
      if (img.hi < -3.0) {
        best = static_cast<int>(c);
        best_gap = {-std::numeric_limits<double>::infinity(), -3.0};
        continue;
      }
      for (const auto& g : e.report.gaps.intervals())
        if (inside_gap(img, g)) {
          best = static_cast<int>(c);
          best_gap = g;
          break;
        }
    }
    if (best >= 0) {
      WitnessPlan p;
      p.xi = xi;
      p.delta = delta;
      p.k = k;
      p.family_id = catalog[best].id;
      p.catalog_index = best;
      p.image = img;
      p.gap = best_gap;
      return p;
    }
    img = f_image(img);
  }
  std::ostringstream os;
  os << "no k <= " << max_k << " maps the neighbourhood of " << xi << " into a catalog gap";
  throw MaxIterExceeded(os.str());
}

std::vector<double> lapack_eigenvalues(const Eigen::MatrixXd& a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (n == 0) return {};
  Eigen::MatrixXd m = a;
  std::vector<double> w(n);
  std::vector<lapack_int> isuppz(2 * n);
  lapack_int found = 0;
  double z = 0.0;
  lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'A', 'U', n, m.data(), n, 0.0, 0.0, 0, 0, 0.0, &found,
                                   w.data(), &z, 1, isuppz.data());
  if (info != 0) throw std::runtime_error("dsyevr failed with info " + std::to_string(info));
  w.resize(found);
  return w;
}

WitnessRealization realize_witness(const WitnessPlan& plan, const std::vector<CatalogEntry>& catalog, int quotient_n,
                                   int max_size) {
  if (plan.catalog_index < 0 || plan.catalog_index >= static_cast<int>(catalog.size()))
    throw std::invalid_argument("plan does not reference the catalog");
  const auto& e = catalog[plan.catalog_index];
  WitnessRealization r;
  const double growth = std::pow(3.0, plan.k) * e.cover.base.n;
  int n = quotient_n;
  while (n > 3 && growth * n > max_size) --n;
  if (growth * n > max_size) throw std::invalid_argument("witness exceeds the size limit");
  r.quotient_n = n;
  r.planar_base = e.planar_quotients;
  Multigraph w = tmap_iterate(cyclic_quotient(e.cover, n), plan.k);
  r.size = w.n;
  auto ev = lapack_eigenvalues(adjacency_matrix(w));
  r.nearest = std::numeric_limits<double>::infinity();
  for (double x : ev) r.nearest = std::min(r.nearest, std::abs(x - plan.xi));
  r.ok = r.nearest >= plan.delta;
  return r;
}

nlohmann::json to_json(const WitnessPlan& p) {
  auto num = [](double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(x > 0 ? "inf" : "-inf"); };
  return {{"xi", p.xi},
          {"delta", p.delta},
          {"k", p.k},
          {"family_id", p.family_id},
          {"catalog_index", p.catalog_index},
          {"image", {p.image.lo, p.image.hi}},
          {"gap", {num(p.gap.lo), num(p.gap.hi)}}};
}

nlohmann::json to_json(const WitnessRealization& r) {
  return {{"quotient_n", r.quotient_n}, {"size", r.size},          {"nearest", r.nearest},
          {"planar_base", r.planar_base}, {"ok", r.ok}};
}

}  // namespace gapsets
