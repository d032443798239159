#include "gapsets/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gapsets {

std::optional<std::pair<double, double>> f_preimage(double y) {
  double disc = 13.0 + 4.0 * y;
  if (disc < 0.0) return std::nullopt;
  double s = std::sqrt(disc);
  return std::make_pair((1.0 - s) / 2.0, (1.0 + s) / 2.0);
}

CantorApprox preimage_intervals(int m) {
  if (m < 0 || m > kMaxPreimageLevel) throw std::invalid_argument("preimage level out of range");
  std::vector<Interval> iv{{-3.0, 3.0}};
  std::vector<double> zeros{0.0}, all_zeros{0.0};
  for (int k = 0; k < m; ++k) {
    std::vector<Interval> next;
    next.reserve(iv.size() * 2);
    for (const auto& i : iv) {
      auto a = *f_preimage(i.lo);
      auto b = *f_preimage(i.hi);
      next.push_back({b.first, a.first});
      next.push_back({a.second, b.second});
    }
    iv = std::move(next);
    std::vector<double> nz;
    for (double z : zeros) {
      auto r = *f_preimage(z);
      nz.push_back(r.first);
      nz.push_back(r.second);
    }
    zeros = std::move(nz);
    all_zeros.insert(all_zeros.end(), zeros.begin(), zeros.end());
  }
  std::sort(all_zeros.begin(), all_zeros.end());
  CantorApprox c;
  c.level = m;
  c.intervals = IntervalSet(std::move(iv));
  c.isolated_points = std::move(all_zeros);
  return c;
}

namespace {

bool in_i_or_j(double y, double tol) { return (y >= -2.0 - tol && y <= tol) || (y >= 1.0 - tol && y <= 3.0 + tol); }

}  // namespace

Itinerary itinerary(double xi, int m) {
  Itinerary it;
  double y = xi;
  if (y < -3.0 || y > 3.0) {
    it.escape_step = 0;
    return it;
  }
  for (int j = 1; j <= m; ++j) {
    if (y >= -2.0 && y <= 0.0) {
      it.bits.push_back(0);
    } else if (y >= 1.0 && y <= 3.0) {
      it.bits.push_back(1);
    } else {
      it.escape_step = j;
      return it;
    }
    y = f_apply(y);
  }
  return it;
}

AMembership a_membership(double xi, int m, double tol) {
  if (m < 0 || m > kMaxMembershipDepth) throw std::invalid_argument("membership depth out of range");
  double y = xi;
  double t = tol;
  for (int j = 0; j <= m; ++j) {
    if (std::abs(y) <= t) return {AKind::IsolatedPoint, j};
    if (j == m) break;
    if (!in_i_or_j(y, t)) return {AKind::Outside, j + 1};
    y = f_apply(y);
    t *= 3.0;
  }
  if (y < -3.0 - t || y > 3.0 + t) return {AKind::Outside, m};
  return {AKind::InLambda, m};
}

IntervalSet pullback_spectral_set(const IntervalSet& k) {
  std::vector<Interval> iv;
  for (const auto& i : k.intervals()) {
    if (i.lo < -3.0 || i.hi > 3.0) throw std::invalid_argument("pullback needs a subset of [-3,3]");
    auto a = *f_preimage(i.lo);
    auto b = *f_preimage(i.hi);
    iv.push_back({b.first, a.first});
    iv.push_back({a.second, b.second});
  }
  std::vector<double> pts{0.0, -2.0};
  for (double p : k.points()) {
    if (p < -3.0 || p > 3.0) throw std::invalid_argument("pullback needs a subset of [-3,3]");
    auto r = *f_preimage(p);
    pts.push_back(r.first);
    pts.push_back(r.second);
  }
  return IntervalSet(std::move(iv), std::move(pts));
}

namespace {

template <bool Parallel>
CapacityResult fekete_impl(const IntervalSet& s, int npoints, int sweeps) {
  if (npoints < 2) throw std::invalid_argument("need at least two points");
  std::vector<Interval> comps;
  for (const auto& i : s.intervals())
    if (i.length() > 0.0) comps.push_back(i);
  CapacityResult res;
  if (comps.empty()) return res;

  const int per = std::max(256, 131072 / static_cast<int>(comps.size()));
  std::vector<double> grid;
  std::vector<int> grid_comp;
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int k = 0; k < per; ++k) {
      grid.push_back(comps[c].lo + comps[c].length() * k / (per - 1));
      grid_comp.push_back(static_cast<int>(c));
    }
  const long ng = static_cast<long>(grid.size());
  std::vector<double> lp(ng, 0.0);
  std::vector<char> used(ng, 0);
  std::vector<double> x;
  std::vector<int> comp;
  long pick = 0;
  for (int k = 0; k < npoints; ++k) {
    if (k > 0) {
      pick = -1;
      double best = -std::numeric_limits<double>::infinity();
      for (long c = 0; c < ng; ++c)
        if (!used[c] && lp[c] > best) {
          best = lp[c];
          pick = c;
        }
      if (pick < 0) break;
    }
    used[pick] = 1;
    x.push_back(grid[pick]);
    comp.push_back(grid_comp[pick]);
    const double xn = grid[pick];
#pragma omp parallel for if (Parallel) schedule(static)
    for (long c = 0; c < ng; ++c) {
      double d = std::abs(grid[c] - xn);
      lp[c] += d > 0.0 ? std::log(d) : -1e300;
    }
  }
  const int n = static_cast<int>(x.size());
  std::vector<int> ord(n);
  for (int i = 0; i < n; ++i) ord[i] = i;
  std::sort(ord.begin(), ord.end(), [&](int a, int b) { return x[a] < x[b]; });
  {
    std::vector<double> xs(n);
    std::vector<int> cs(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = x[ord[i]];
      cs[i] = comp[ord[i]];
    }
    x = std::move(xs);
    comp = std::move(cs);
  }

  auto slope = [&](int i, double y) {
    double d = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) d += 1.0 / (y - x[j]);
    return d;
  };
  for (int sw = 0; sw < sweeps; ++sw) {
    double moved = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto& c = comps[comp[i]];
      bool left_open = i > 0 && comp[i - 1] == comp[i];
      bool right_open = i + 1 < n && comp[i + 1] == comp[i];
      double lo = left_open ? x[i - 1] : c.lo;
      double hi = right_open ? x[i + 1] : c.hi;
      double y;
      if (!left_open && slope(i, lo) <= 0.0) {
        y = lo;
      } else if (!right_open && slope(i, hi) >= 0.0) {
        y = hi;
      } else {
        double a = lo, b = hi;
        for (int it = 0; it < 100 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
          double mid = 0.5 * (a + b);
          if (slope(i, mid) > 0.0) {
            a = mid;
          } else {
            b = mid;
          }
        }
        y = 0.5 * (a + b);
      }
      moved = std::max(moved, std::abs(y - x[i]));
      x[i] = y;
    }
    if (moved < 1e-14) break;
  }

  std::vector<double> row(n, 0.0);
#pragma omp parallel for if (Parallel) schedule(static)
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) acc += std::log(std::abs(x[i] - x[j]));
    row[i] = acc;
  }
  double energy = 0.0, self = 0.0;
  for (int i = 0; i < n; ++i) {
    energy += row[i];
    const auto& c = comps[comp[i]];
    double left = (i > 0 && comp[i - 1] == comp[i]) ? 0.5 * (x[i] - x[i - 1]) : x[i] - c.lo;
    double right = (i + 1 < n && comp[i + 1] == comp[i]) ? 0.5 * (x[i + 1] - x[i]) : c.hi - x[i];
    self += std::log(left + right) - 1.5;
  }
  res.points = x;
  res.nth_diameter = std::exp(energy / (static_cast<double>(n) * (n - 1)));
  res.estimate = std::exp((energy + self) / (static_cast<double>(n) * n));
  return res;
}

}  // namespace

CapacityResult fekete_capacity(const IntervalSet& s, int npoints, int sweeps) {
  return fekete_impl<true>(s, npoints, sweeps);
}

CapacityResult fekete_capacity_serial(const IntervalSet& s, int npoints, int sweeps) {
  return fekete_impl<false>(s, npoints, sweeps);
}

double capacity_estimate(const IntervalSet& s, int npoints) {
  if (npoints < 16) throw std::invalid_argument("capacity estimate needs at least 16 points");
  return fekete_capacity(s, npoints).estimate;
}

}  // namespace gapsets
