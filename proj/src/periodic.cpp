#include "gapsets/periodic.hpp"

#include "gapsets/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gapsets {

PeriodicGraph::PeriodicGraph(Multigraph b, int r, std::vector<Offset> off, std::string nm)
    : base(std::move(b)), rank(r), offsets(std::move(off)), name(std::move(nm)) {
  if (rank != 1 && rank != 2) throw std::invalid_argument("rank must be 1 or 2");
  if (offsets.size() != base.edges.size()) throw std::invalid_argument("one offset per edge required");
  if (rank == 1)
    for (const auto& o : offsets)
      if (o[1] != 0) throw std::invalid_argument("rank-1 offsets must have zero second component");
}

int PeriodicGraph::links() const {
  return static_cast<int>(std::count_if(offsets.begin(), offsets.end(), [](const Offset& o) { return o[0] || o[1]; }));
}

Eigen::MatrixXcd twisted_adjacency(const PeriodicGraph& p, const std::vector<std::complex<double>>& z) {
  if (static_cast<int>(z.size()) != p.rank) throw std::invalid_argument("z must have one entry per rank");
  for (auto c : z)
    if (std::abs(std::abs(c) - 1.0) > 1e-12) throw std::invalid_argument("z must have unit modulus");
  const int n = p.base.n;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t e = 0; e < p.base.edges.size(); ++e) {
    auto [o, t] = p.base.edges[e];
    std::complex<double> ph = std::pow(z[0], p.offsets[e][0]);
    if (p.rank == 2) ph *= std::pow(z[1], p.offsets[e][1]);
    a(o, t) += ph;
    a(t, o) += std::conj(ph);
  }
  for (int v : p.base.half_loops) a(v, v) += 1.0;
  return a;
}

Eigen::MatrixXcd twisted_adjacency_at(const PeriodicGraph& p, double theta1, double theta2) {
  const int n = p.base.n;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t e = 0; e < p.base.edges.size(); ++e) {
    auto [o, t] = p.base.edges[e];
    double phase = p.offsets[e][0] * theta1 + (p.rank == 2 ? p.offsets[e][1] * theta2 : 0.0);
    std::complex<double> ph = std::polar(1.0, phase);
    a(o, t) += ph;
    a(t, o) += std::conj(ph);
  }
  for (int v : p.base.half_loops) a(v, v) += 1.0;
  return a;
}

Spectrum twisted_eigenvalues(const PeriodicGraph& p, double theta1, double theta2) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(twisted_adjacency_at(p, theta1, theta2), Eigen::EigenvaluesOnly);
  Spectrum s(es.eigenvalues().data(), es.eigenvalues().data() + p.base.n);
  std::sort(s.begin(), s.end());
  return s;
}

namespace {

double grid_angle(int i, int grid) { return -std::numbers::pi + 2.0 * std::numbers::pi * i / grid; }

template <bool Parallel>
BandStructure bands_impl(const PeriodicGraph& p, int grid) {
  if (grid < 1) throw std::invalid_argument("grid must be positive");
  BandStructure b;
  b.rank = p.rank;
  b.grid = grid;
  const long samples = p.rank == 1 ? grid : static_cast<long>(grid) * grid;
  b.angles.resize(samples);
  for (long s = 0; s < samples; ++s) {
    if (p.rank == 1) {
      b.angles[s] = {grid_angle(static_cast<int>(s), grid), 0.0};
    } else {
      b.angles[s] = {grid_angle(static_cast<int>(s / grid), grid), grid_angle(static_cast<int>(s % grid), grid)};
    }
  }
  b.values.resize(samples, p.base.n);
#pragma omp parallel for if (Parallel) schedule(static)
  for (long s = 0; s < samples; ++s) {
    auto ev = twisted_eigenvalues(p, b.angles[s][0], b.angles[s][1]);
    for (int j = 0; j < p.base.n; ++j) b.values(s, j) = ev[j];
  }
  return b;
}

}  // namespace

BandStructure bands(const PeriodicGraph& p, int grid) { return bands_impl<true>(p, grid); }
BandStructure bands_serial(const PeriodicGraph& p, int grid) { return bands_impl<false>(p, grid); }

std::string bands_csv(const BandStructure& b) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "theta1";
  if (b.rank == 2) os << ",theta2";
  for (int j = 0; j < b.values.cols(); ++j) os << ",lambda" << (j + 1);
  os << "\n";
  for (long s = 0; s < b.values.rows(); ++s) {
    os << b.angles[s][0];
    if (b.rank == 2) os << "," << b.angles[s][1];
    for (int j = 0; j < b.values.cols(); ++j) os << "," << b.values(s, j);
    os << "\n";
  }
  return os.str();
}

PeriodicGraph restrict_subtorus(const PeriodicGraph& p, int a, int b) {
  if (p.rank != 2) throw std::invalid_argument("subtorus restriction needs a rank-2 cover");
  if (a == 0 && b == 0) throw std::invalid_argument("(a,b) must not both be zero");
  if (std::gcd(a, b) != 1) throw std::invalid_argument("(a,b) must be coprime");
  std::vector<Offset> off;
  off.reserve(p.offsets.size());
  for (const auto& o : p.offsets) off.push_back({o[0] * a + o[1] * b, 0});
  std::string nm = p.name.empty() ? std::string{} : p.name + "|" + std::to_string(a) + "," + std::to_string(b);
  return PeriodicGraph(p.base, 1, std::move(off), nm);
}

std::vector<FlatBand> detect_flat_bands(const BandStructure& b, double tol) {
  std::vector<FlatBand> out;
  if (b.values.rows() == 0) return out;
  const int n = static_cast<int>(b.values.cols());
  int j = 0;
  while (j < n) {
    double ref = b.values(0, j);
    int k = j;
    while (k < n && b.values(0, k) - ref < tol) ++k;
    int mult = k - j;
    double sum = 0.0;
    long cnt = 0;
    for (long s = 0; s < b.values.rows() && mult > 0; ++s) {
      int c = 0;
      for (int i = 0; i < n; ++i)
        if (std::abs(b.values(s, i) - ref) < tol) {
          ++c;
          sum += b.values(s, i);
          ++cnt;
        }
      mult = std::min(mult, c);
    }
    if (mult > 0) out.push_back({sum / static_cast<double>(cnt), mult});
    j = k;
  }
  return out;
}

GapReport gap_report(const BandStructure& b, double threshold) {
  GapReport r;
  const int n = static_cast<int>(b.values.cols());
  std::vector<Interval> iv;
  for (int j = 0; j < n; ++j) iv.push_back({b.values.col(j).minCoeff(), b.values.col(j).maxCoeff()});
  std::sort(iv.begin(), iv.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (const auto& i : iv) {
    if (!merged.empty() && i.lo - merged.back().hi <= threshold) {
      merged.back().hi = std::max(merged.back().hi, i.hi);
    } else {
      merged.push_back(i);
    }
  }
  if (!merged.empty() && merged.front().lo + 3.0 <= threshold) merged.front().lo = -3.0;
  if (!merged.empty() && 3.0 - merged.back().hi <= threshold) merged.back().hi = 3.0;
  r.spectrum_estimate = IntervalSet(merged);
  r.gaps = r.spectrum_estimate.complement_in(-3.0, 3.0);
  r.flat_bands = detect_flat_bands(b);
  return r;
}

Multigraph torus_quotient(const PeriodicGraph& p, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw std::invalid_argument("quotient sizes must be positive");
  if (p.rank == 1) n2 = 1;
  const int nb = p.base.n;
  const int cells = n1 * n2;
  Multigraph g(nb * cells, {});
  auto mod = [](int a, int m) { return ((a % m) + m) % m; };
  for (int c1 = 0; c1 < n1; ++c1)
    for (int c2 = 0; c2 < n2; ++c2) {
      int c = c1 * n2 + c2;
      for (std::size_t e = 0; e < p.base.edges.size(); ++e) {
        auto [o, t] = p.base.edges[e];
        int d = mod(c1 + p.offsets[e][0], n1) * n2 + mod(c2 + p.offsets[e][1], n2);
        g.add_edge(o + nb * c, t + nb * d);
      }
      for (int v : p.base.half_loops) g.half_loops.push_back(v + nb * c);
    }
  if (!p.name.empty()) g.name = p.name + "/" + std::to_string(n1) + (p.rank == 2 ? "x" + std::to_string(n2) : "");
  return g;
}

Multigraph cyclic_quotient(const PeriodicGraph& p, int n) {
  if (p.rank != 1) throw std::invalid_argument("cyclic quotient needs a rank-1 cover");
  return torus_quotient(p, n, 1);
}

bool cover_is_connected(const PeriodicGraph& p) { return is_connected(torus_quotient(p, 3, 3)); }

bool is_automorphism(const Multigraph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n) return false;
  std::vector<int> seen(g.n, 0);
  for (int v : perm) {
    if (v < 0 || v >= g.n || seen[v]) return false;
    seen[v] = 1;
  }
  Eigen::MatrixXi m = adjacency_counts(g);
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v)
      if (m(perm[u], perm[v]) != m(u, v)) return false;
  return true;
}

QuotientResult quotient_by_automorphism(const Multigraph& g, const std::vector<std::vector<int>>& perms) {
  for (const auto& p : perms)
    if (!is_automorphism(g, p)) throw std::invalid_argument("permutation is not an automorphism");
  std::vector<int> id(g.n);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> group{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& h : frontier)
      for (const auto& p : perms) {
        std::vector<int> c(g.n);
        for (int v = 0; v < g.n; ++v) c[v] = p[h[v]];
        if (group.insert(c).second) next.push_back(std::move(c));
      }
    frontier = std::move(next);
  }
  const int order = static_cast<int>(group.size());
  std::vector<int> orbit(g.n, -1);
  std::vector<int> rep;
  for (int v = 0; v < g.n; ++v) {
    if (orbit[v] >= 0) continue;
    std::set<int> members;
    for (const auto& h : group) members.insert(h[v]);
    if (static_cast<int>(members.size()) != order) throw std::invalid_argument("group action is not free on vertices");
    for (int w : members) orbit[w] = static_cast<int>(rep.size());
    rep.push_back(v);
  }
  const int q = static_cast<int>(rep.size());
  Eigen::MatrixXi m = adjacency_counts(g);
  Eigen::MatrixXi qm = Eigen::MatrixXi::Zero(q, q);
  for (int i = 0; i < q; ++i)
    for (int w = 0; w < g.n; ++w) qm(i, orbit[w]) += m(rep[i], w);
  QuotientResult r;
  r.group_order = order;
  r.graph = Multigraph(q, {}, g.name.empty() ? std::string{} : g.name + "/G");
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      if (qm(i, j) != qm(j, i)) throw std::logic_error("asymmetric orbit quotient");
      for (int k = 0; k < qm(i, j); ++k) r.graph.add_edge(i, j);
      if (qm(i, j) > 1) r.has_multi = true;
    }
    for (int k = 0; k < qm(i, i) / 2; ++k) r.graph.add_edge(i, i);
    if (qm(i, i) >= 2) r.has_loops = true;
    if (qm(i, i) % 2) {
      r.graph.half_loops.push_back(i);
      r.has_half_loops = true;
    }
  }
  return r;
}

std::string cover_id(const PeriodicGraph& p) {
  auto cf = canonical_form(p.base);
  std::vector<int> pos(p.base.n);
  for (int i = 0; i < p.base.n; ++i) pos[cf.order[i]] = i;
  auto autos = automorphisms(p.base, 2000);
  std::vector<long long> best;
  for (const auto& a : autos)
    for (int s1 : {1, -1})
      for (int s2 : {1, -1}) {
        if (p.rank == 1 && s2 == -1) continue;
        std::vector<std::array<long long, 4>> rows;
        for (std::size_t e = 0; e < p.base.edges.size(); ++e) {
          auto [o, t] = p.base.edges[e];
          long long u = pos[a[o]], v = pos[a[t]];
          long long k1 = s1 * p.offsets[e][0], k2 = s2 * p.offsets[e][1];
          if (u > v || (u == v && (k1 < 0 || (k1 == 0 && k2 < 0)))) {
            std::swap(u, v);
            k1 = -k1;
            k2 = -k2;
          }
          rows.push_back({u, v, k1, k2});
        }
        std::sort(rows.begin(), rows.end());
        std::vector<long long> flat{p.base.n, p.rank};
        for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
        std::vector<int> hl;
        for (int v : p.base.half_loops) hl.push_back(pos[a[v]]);
        std::sort(hl.begin(), hl.end());
        flat.push_back(-1);
        flat.insert(flat.end(), hl.begin(), hl.end());
        if (best.empty() || flat < best) best = std::move(flat);
      }
  std::uint64_t h = 1469598103934665603ull;
  for (long long x : best)
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>((x >> (8 * b)) & 0xff);
      h *= 1099511628211ull;
    }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

nlohmann::json to_json(const PeriodicGraph& p) {
  nlohmann::json j;
  j["base"] = to_json(p.base);
  j["rank"] = p.rank;
  j["offsets"] = nlohmann::json::array();
  for (const auto& o : p.offsets) {
    if (p.rank == 1) {
      j["offsets"].push_back(o[0]);
    } else {
      j["offsets"].push_back({o[0], o[1]});
    }
  }
  j["name"] = p.name;
  return j;
}

PeriodicGraph periodic_from_json(const nlohmann::json& j) {
  Multigraph b = graph_from_json(j.at("base"));
  int rank = j.value("rank", 1);
  std::vector<Offset> off;
  for (const auto& o : j.at("offsets")) {
    if (o.is_array()) {
      off.push_back({o.at(0).get<int>(), o.size() > 1 ? o.at(1).get<int>() : 0});
    } else {
      off.push_back({o.get<int>(), 0});
    }
  }
  return PeriodicGraph(std::move(b), rank, std::move(off), j.value("name", std::string{}));
}

}  // namespace gapsets
