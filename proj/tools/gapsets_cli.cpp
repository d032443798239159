#include "gapsets/certify.hpp"
#include "gapsets/dynamics.hpp"
#include "gapsets/families.hpp"
#include "gapsets/planarity.hpp"
#include "gapsets/search.hpp"
#include "gapsets/tmap.hpp"
#include "gapsets/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <csignal>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifndef GAPSETS_VERSION
#define GAPSETS_VERSION "0.0.0"
#endif

namespace gapsets::cli {

enum Exit : int { kOk = 0, kRefuted = 2, kNumerical = 3, kBadInput = 4, kInterrupted = 130 };

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

volatile std::sig_atomic_t interrupted = 0;
void on_interrupt(int) { interrupted = 1; }

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  int grid = 256;
  double threshold = kDefaultGapThreshold;
  std::string seeds;
  std::string out;
  std::uint64_t seed = 1;
  bool exact = false;
};

std::string content_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadInput("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BadInput("malformed JSON in " + what + ": " + e.what());
  }
}

Multigraph load_graph_checked(const std::string& path) {
  auto j = parse_json(read_text(path), path);
  try {
    auto g = graph_from_json(j);
    if (g.edges.empty() && g.half_loops.empty()) throw BadInput("graph in " + path + " has no edges");
    if (!g.is_cubic()) std::cerr << "warning: " << path << " is not cubic\n";
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw BadInput(path + ": " + e.what());
  }
}

PeriodicGraph load_cover(const std::string& path) {
  auto j = parse_json(read_text(path), path);
  try {
    return periodic_from_json(j.contains("cover") ? j["cover"] : j);
  } catch (const std::exception& e) {
    throw BadInput(path + ": " + e.what());
  }
}

nlohmann::json meta(const RunConfig& cfg, const std::string& hash) {
  return {{"tool", "gapsets"},
          {"version", GAPSETS_VERSION},
          {"command", cfg.command},
          {"content_hash", hash},
          {"seed", cfg.seed}};
}

void write_artifact(const RunConfig& cfg, const std::string& name, const std::string& content) {
  if (cfg.out.empty()) return;
  std::filesystem::create_directories(cfg.out);
  auto path = std::filesystem::path(cfg.out) / name;
  std::ofstream out(path);
  if (!out) throw BadInput("cannot write " + path.string());
  out << content;
}

std::string num12(double x) {
  if (std::abs(x) < 5e-13) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string join(const Spectrum& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + num12(s[i]);
  return out;
}

std::string spectrum_csv(const Spectrum& s) {
  std::string out = "index,eigenvalue\n";
  for (std::size_t i = 0; i < s.size(); ++i) out += std::to_string(i) + "," + num12(s[i]) + "\n";
  return out;
}

std::vector<int> parse_sizes(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      int n = std::stoi(tok);
      if (n < 2 || n % 2) throw BadInput("seed sizes must be even and >= 2");
      out.push_back(n);
    } catch (const std::logic_error&) {
      throw BadInput("bad seed size list: " + s);
    }
  }
  if (out.empty()) throw BadInput("empty seed size list");
  return out;
}

// Seeds read from a file (JSON array or JSON lines) or enumerated by size.
std::vector<Multigraph> load_seeds(const RunConfig& cfg, const std::string& sizes, std::string& hash) {
  if (cfg.seeds.empty()) {
    hash = content_hash("sizes:" + sizes);
    return seed_multigraphs(parse_sizes(sizes));
  }
  auto text = read_text(cfg.seeds);
  hash = content_hash(text);
  std::vector<Multigraph> out;
  try {
    auto trimmed = text.substr(text.find_first_not_of(" \t\r\n") == std::string::npos ? 0 : text.find_first_not_of(" \t\r\n"));
    if (!trimmed.empty() && trimmed[0] == '[') {
      for (const auto& g : parse_json(text, cfg.seeds)) out.push_back(graph_from_json(g));
    } else {
      std::stringstream ss(text);
      std::string line;
      while (std::getline(ss, line))
        if (!line.empty()) out.push_back(graph_from_json(parse_json(line, cfg.seeds)));
    }
  } catch (const nlohmann::json::exception& e) {
    throw BadInput(cfg.seeds + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw BadInput(cfg.seeds + ": " + e.what());
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i].is_cubic()) throw BadInput("seed " + std::to_string(i) + " is not cubic");
    if (out[i].name.empty()) out[i].name = "S" + std::to_string(i);
  }
  if (out.empty()) throw BadInput(cfg.seeds + " holds no seeds");
  return out;
}

int cmd_spectrum(const RunConfig& cfg, int random_n) {
  Multigraph g;
  std::string hash;
  if (random_n > 0) {
    std::mt19937_64 rng(cfg.seed);
    g = random_cubic_graph(random_n, rng);
    hash = content_hash(to_json(g).dump());
    write_artifact(cfg, "graph.json", to_json(g).dump() + "\n");
  } else {
    if (cfg.inputs.empty()) throw BadInput("spectrum needs a graph file or --random");
    g = load_graph_checked(cfg.inputs[0]);
    hash = content_hash(read_text(cfg.inputs[0]));
  }
  auto s = spectrum(g);
  std::cout << join(s) << "\n";
  write_artifact(cfg, "spectrum.csv", spectrum_csv(s));
  write_artifact(cfg, "spectrum.json", nlohmann::json{{"meta", meta(cfg, hash)}, {"spectrum", s}}.dump(2) + "\n");
  return kOk;
}

std::string kind_name(AKind k) {
  switch (k) {
    case AKind::InLambda: return "in_lambda";
    case AKind::IsolatedPoint: return "isolated_point";
    default: return "outside";
  }
}

int cmd_tmap(const RunConfig& cfg, int k, int max_size) {
  if (cfg.inputs.empty()) throw BadInput("tmap needs a graph file");
  if (k < 0 || k > kMaxMembershipDepth) throw BadInput("k out of range");
  auto g = load_graph_checked(cfg.inputs[0]);
  if (g.n * std::pow(3.0, k) > max_size) throw BadInput("T^k exceeds the size cap " + std::to_string(max_size));
  auto t = tmap_iterate(g, k);
  auto s = spectrum(t);
  const int depth = std::max(k, 1);
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "eigenvalue,kind,depth\n";
  int inside = 0;
  for (double x : s) {
    auto m = a_membership(x, depth, 1e-6);
    inside += m.kind != AKind::Outside;
    rows.push_back({{"eigenvalue", x}, {"kind", kind_name(m.kind)}, {"depth", m.depth}});
    csv += num12(x) + "," + kind_name(m.kind) + "," + std::to_string(m.depth) + "\n";
  }
  const auto hash = content_hash(read_text(cfg.inputs[0]));
  write_artifact(cfg, "tmap.json", to_json(t).dump() + "\n");
  write_artifact(cfg, "membership.csv", csv);
  write_artifact(cfg, "tmap_report.json",
                 nlohmann::json{{"meta", meta(cfg, hash)}, {"k", k}, {"size", t.n}, {"membership", rows}}.dump(2) + "\n");
  std::cout << "T^" << k << " has " << t.n << " vertices\n";
  std::cout << "spectrum: " << join(s) << "\n";
  std::cout << inside << "/" << s.size() << " eigenvalues classified inside A at depth " << depth << "\n";
  return kOk;
}

nlohmann::json gap_json(const GapReport& r) {
  nlohmann::json flats = nlohmann::json::array();
  for (const auto& f : r.flat_bands) flats.push_back({{"value", f.value}, {"multiplicity", f.multiplicity}});
  return {{"spectrum", r.spectrum_estimate.to_json()}, {"gaps", r.gaps.to_json()}, {"flat_bands", flats}};
}

std::string intervals_text(const IntervalSet& s) {
  std::string out;
  for (const auto& i : s.intervals()) out += (out.empty() ? "" : " ") + ("[" + num12(i.lo) + ", " + num12(i.hi) + "]");
  return out.empty() ? "none" : out;
}

int cmd_bands(const RunConfig& cfg) {
  if (cfg.inputs.empty()) throw BadInput("bands needs a cover file");
  if (cfg.grid < 4) throw BadInput("grid must be >= 4");
  auto p = load_cover(cfg.inputs[0]);
  auto b = bands(p, cfg.grid);
  auto r = gap_report(b, cfg.threshold);
  const auto hash = content_hash(read_text(cfg.inputs[0]));
  write_artifact(cfg, "bands.csv", bands_csv(b));
  write_artifact(cfg, "gaps.json", nlohmann::json{{"meta", meta(cfg, hash)}, {"report", gap_json(r)}}.dump(2) + "\n");
  std::cout << "cover " << cover_id(p) << " rank " << p.rank << " grid " << cfg.grid << "\n";
  std::cout << "spectrum: " << intervals_text(r.spectrum_estimate) << "\n";
  std::cout << "gaps: " << intervals_text(r.gaps) << "\n";
  for (const auto& f : r.flat_bands) std::cout << "flat band " << num12(f.value) << " x" << f.multiplicity << "\n";
  return kOk;
}

int cmd_search(const RunConfig& cfg, const std::string& sizes, bool planar, bool rank2) {
  std::string hash;
  auto seeds = load_seeds(cfg, sizes, hash);
  SearchOptions o;
  o.grid = cfg.grid;
  o.threshold = cfg.threshold;
  o.include_rank2 = rank2;
  o.planar_only = planar;
  std::ofstream out;
  std::string path;
  if (!cfg.out.empty()) {
    std::filesystem::create_directories(cfg.out);
    path = (std::filesystem::path(cfg.out) / "catalog.jsonl").string();
    out.open(path);
    if (!out) throw BadInput("cannot write " + path);
  }
  std::signal(SIGINT, on_interrupt);
  std::set<std::string> seen;
  std::vector<CatalogEntry> catalog;
  std::size_t done = 0;
  for (std::size_t s = 0; s < seeds.size() && !interrupted; ++s, ++done) {
    for (auto& e : search_covers({seeds[s]}, o)) {
      if (!seen.insert(e.band_hash).second) continue;
      e.seed = static_cast<int>(s);
      if (out) out << to_json(e).dump() << "\n" << std::flush;
      catalog.push_back(std::move(e));
    }
  }
  std::signal(SIGINT, SIG_DFL);
  nlohmann::json summary{{"meta", meta(cfg, hash)}, {"seeds", seeds.size()}, {"seeds_done", done},
                         {"covers", catalog.size()}, {"planar_only", planar}};
  if (planar) {
    summary["core"] = to_json(gap_coverage(catalog, -2.0, 0.0));
    summary["stretch"] = to_json(gap_coverage(catalog, -3.0, 2.0 * std::sqrt(2.0) - 0.01));
  }
  write_artifact(cfg, "search_summary.json", summary.dump(2) + "\n");
  std::cout << catalog.size() << " distinct covers from " << done << "/" << seeds.size() << " seeds\n";
  if (planar)
    std::cout << "core [-2,0] covered " << summary["core"]["covered"] << "/" << summary["core"]["samples"] << "\n";
  if (interrupted) {
    std::cerr << "interrupted; partial catalog flushed\n";
    return kInterrupted;
  }
  return kOk;
}

int cmd_quotient(const RunConfig& cfg, int n) {
  if (cfg.inputs.empty()) throw BadInput("quotient needs a cover file");
  if (n < 1) throw BadInput("quotient size must be positive");
  auto p = load_cover(cfg.inputs[0]);
  if (p.rank != 1) throw BadInput("quotient expects a rank-1 cover");
  auto q = cyclic_quotient(p, n);
  auto s = spectrum(q);
  auto pl = is_planar(q);
  const auto hash = content_hash(read_text(cfg.inputs[0]));
  write_artifact(cfg, "quotient.json", to_json(q).dump() + "\n");
  write_artifact(cfg, "spectrum.csv", spectrum_csv(s));
  write_artifact(cfg, "quotient_report.json",
                 nlohmann::json{{"meta", meta(cfg, hash)},
                                {"n", n},
                                {"size", q.n},
                                {"planar", pl.planar},
                                {"kuratowski", pl.kuratowski_kind},
                                {"spectrum", s}}
                         .dump(2) +
                     "\n");
  std::cout << "quotient of size " << q.n << ", " << (pl.planar ? "planar" : "non-planar " + pl.kuratowski_kind) << "\n";
  std::cout << "spectrum: " << join(s) << "\n";
  return kOk;
}

std::pair<long, long> parse_target(const std::string& t) {
  static const std::regex re(R"(\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
  std::smatch m;
  if (!std::regex_match(t, m, re)) throw BadInput("target must be an integer interval like (-1,1): " + t);
  long lo = std::stol(m[1]), hi = std::stol(m[2]);
  if (lo >= hi) throw BadInput("target interval is empty");
  return {lo, hi};
}

int cmd_certify(const RunConfig& cfg, const std::string& target, const std::string& cover_path,
                const std::string& verify_path, const std::string& sizes) {
  if (!verify_path.empty()) {
    auto j = parse_json(read_text(verify_path), verify_path);
    auto o = reverify(j.contains("certificate") ? j["certificate"] : j);
    std::cout << (o.certified ? "certificate re-verified" : "certificate refuted: " + o.reason) << "\n";
    return o.certified ? kOk : kRefuted;
  }
  if (target.empty()) throw BadInput("certify needs --target or --verify");
  auto [lo, hi] = parse_target(target);
  std::vector<PeriodicGraph> candidates;
  std::string hash;
  if (!cover_path.empty()) {
    candidates.push_back(load_cover(cover_path));
    hash = content_hash(read_text(cover_path));
  } else {
    auto seeds = load_seeds(cfg, sizes, hash);
    SearchOptions o;
    o.grid = cfg.grid;
    o.threshold = cfg.threshold;
    for (const auto& e : search_covers(seeds, o)) {
      if (e.cover.rank != 1) continue;
      for (const auto& g : e.report.gaps.intervals())
        if (std::abs(g.lo - lo) < 1e-6 && std::abs(g.hi - hi) < 1e-6) {
          candidates.push_back(e.cover);
          break;
        }
    }
    if (candidates.empty()) {
      std::cout << "no searched cover has the gap " << target << "\n";
      return kRefuted;
    }
  }
  CertifyOutcome o;
  PeriodicGraph p;
  bool numerical = false;
  for (const auto& c : candidates) {
    if (c.rank != 1) throw BadInput("certification expects a rank-1 cover");
    o = certify_gap(c, lo, hi, std::max(cfg.grid, 512));
    p = c;
    std::cout << "cover " << cover_id(c) << " (" << c.name << "): " << (o.certified ? "certified" : o.reason) << "\n";
    for (const auto& d : o.certificate.derivatives) numerical = numerical || !std::isfinite(d.d2);
    if (o.certified) break;
  }
  auto j = nlohmann::json{{"meta", meta(cfg, hash)}, {"certificate", to_json(o.certificate)}};
  write_artifact(cfg, "certificate.json", j.dump(2) + "\n");
  if (!o.certified) return numerical ? kNumerical : kRefuted;
  std::cout << "certified gap " << target << " at theta_t = " << angle_name(o.certificate.touch) << "\n";
  std::cout << "eigenvalues:";
  for (const auto& pr : o.certificate.pairs) std::cout << " " << to_string(pr.lambda);
  std::cout << "\n";
  auto back = reverify(to_json(o.certificate));
  if (!back.certified) {
    std::cout << "serialized certificate refuted: " << back.reason << "\n";
    return kRefuted;
  }
  return kOk;
}

IntervalSet parse_set(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "level") {
      int m = std::stoi(arg);
      if (m < 0 || m > kMaxPreimageLevel) throw BadInput("level out of range");
      return preimage_intervals(m).intervals;
    }
    if (kind == "interval") {
      std::vector<Interval> iv;
      std::stringstream ss(arg);
      std::string piece;
      while (std::getline(ss, piece, ';')) {
        auto c = piece.find(',');
        if (c == std::string::npos) throw BadInput("interval needs lo,hi");
        double a = std::stod(piece.substr(0, c)), b = std::stod(piece.substr(c + 1));
        if (!(a <= b)) throw BadInput("interval with lo > hi");
        iv.push_back({a, b});
      }
      if (iv.empty()) throw BadInput("no intervals given");
      return IntervalSet(iv);
    }
  } catch (const std::logic_error&) {
    throw BadInput("bad set specification: " + spec);
  }
  throw BadInput("set must be level:m or interval:a,b[;c,d...]");
}

int cmd_capacity(const RunConfig& cfg, const std::string& set, int points, int sweeps) {
  auto s = parse_set(set);
  if (points < 16) throw BadInput("at least 16 points are needed");
  auto r = fekete_capacity(s, points, sweeps);
  if (!std::isfinite(r.estimate)) throw NumericalFailure("capacity estimate is not finite");
  std::string csv = "index,point\n";
  for (std::size_t i = 0; i < r.points.size(); ++i) csv += std::to_string(i) + "," + num12(r.points[i]) + "\n";
  write_artifact(cfg, "fekete_points.csv", csv);
  write_artifact(cfg, "capacity.json",
                 nlohmann::json{{"meta", meta(cfg, content_hash(set))},
                                {"set", s.to_json()},
                                {"points", points},
                                {"sweeps", sweeps},
                                {"nth_diameter", r.nth_diameter},
                                {"estimate", r.estimate}}
                         .dump(2) +
                     "\n");
  std::cout << "capacity estimate " << num12(r.estimate) << " (nth diameter " << num12(r.nth_diameter) << ", "
            << points << " points)\n";
  return kOk;
}

int cmd_witness(const RunConfig& cfg, double xi, double delta, const std::string& catalog_path,
                const std::string& sizes, int max_k, int quotient_n, int max_size) {
  std::vector<CatalogEntry> catalog;
  std::string hash;
  if (!catalog_path.empty()) {
    hash = content_hash(read_text(catalog_path));
    try {
      catalog = read_catalog(catalog_path);
    } catch (const std::exception& e) {
      throw BadInput(catalog_path + ": " + e.what());
    }
  } else {
    auto seeds = load_seeds(cfg, sizes, hash);
    SearchOptions o;
    o.grid = cfg.grid;
    o.threshold = cfg.threshold;
    o.include_rank2 = false;
    catalog = search_planar_covers(seeds, o).covers;
  }
  WitnessPlan plan;
  try {
    plan = plan_gap_witness(xi, delta, catalog, max_k);
  } catch (const MaxIterExceeded& e) {
    throw NumericalFailure(e.what());
  } catch (const std::invalid_argument& e) {
    throw BadInput(e.what());
  }
  auto real = realize_witness(plan, catalog, quotient_n, max_size);
  write_artifact(cfg, "witness.json",
                 nlohmann::json{{"meta", meta(cfg, hash)}, {"plan", to_json(plan)}, {"realization", to_json(real)}}
                         .dump(2) +
                     "\n");
  std::cout << "xi " << num12(xi) << " delta " << num12(delta) << ": k=" << plan.k << " family " << plan.family_id
            << " (" << catalog[plan.catalog_index].cover.name << ")\n";
  std::cout << "witness size " << real.size << ", nearest eigenvalue at distance " << num12(real.nearest) << "\n";
  return real.ok ? kOk : kNumerical;
}

int run(int argc, char** argv) {
  CLI::App app{"Spectral gap sets of cubic graphs: experiments and certificates"};
  app.set_version_flag("--version", GAPSETS_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--grid", cfg.grid, "Brillouin zone grid size N")->check(CLI::PositiveNumber);
  app.add_option("--threshold", cfg.threshold, "minimum reported gap width")->check(CLI::PositiveNumber);
  app.add_option("--seeds", cfg.seeds, "seed graphs (JSON array or JSON lines)");
  app.add_option("--out", cfg.out, "output directory for artifacts");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_flag("--exact", cfg.exact, "force exact certification");

  auto* spec = app.add_subcommand("spectrum", "sorted adjacency spectrum of a graph");
  int random_n = 0;
  spec->add_option("graph", cfg.inputs, "graph JSON");
  spec->add_option("--random", random_n, "use a random simple cubic graph on this many vertices");

  auto* tm = app.add_subcommand("tmap", "iterate the triangle map and classify eigenvalues against A");
  int k = 1, tmap_cap = 1000;
  tm->add_option("graph", cfg.inputs, "graph JSON")->required();
  tm->add_option("--k", k, "iterations");
  tm->add_option("--max-size", tmap_cap, "vertex cap for T^k");

  auto* bd = app.add_subcommand("bands", "band structure and gap report of a periodic cover");
  bd->add_option("cover", cfg.inputs, "cover JSON")->required();

  auto* se = app.add_subcommand("search", "enumerate covers of seed graphs into a catalog");
  std::string sizes = "4";
  bool planar = false, no_rank2 = false;
  se->add_option("--sizes", sizes, "seed multigraph sizes, comma separated");
  se->add_flag("--planar", planar, "keep covers whose quotients n = 3..8 are planar");
  se->add_flag("--no-rank2", no_rank2, "skip unrestricted rank-2 covers");

  auto* qu = app.add_subcommand("quotient", "cyclic quotient of a rank-1 cover");
  int qn = 4;
  qu->add_option("cover", cfg.inputs, "cover JSON")->required();
  qu->add_option("-n,--n", qn, "number of cells");

  auto* ce = app.add_subcommand("certify", "search, locate and certify a maximal gap");
  std::string target, cover_path, verify_path;
  std::string cert_sizes = "2,4,6";
  ce->add_option("--target", target, "integer gap such as (-1,1)");
  ce->add_option("--cover", cover_path, "certify this cover instead of searching");
  ce->add_option("--verify", verify_path, "re-verify a certificate file");
  ce->add_option("--sizes", cert_sizes, "seed sizes searched in order");

  auto* ca = app.add_subcommand("capacity", "Fekete point capacity estimate");
  std::string set = "level:0";
  int points = 64, sweeps = 200;
  ca->add_option("--set", set, "level:m or interval:a,b[;c,d...]");
  ca->add_option("--points", points, "number of Fekete points");
  ca->add_option("--sweeps", sweeps, "refinement sweeps");

  auto* wi = app.add_subcommand("witness", "plan and realize a finite gap witness");
  double xi = 0.0, delta = 0.01;
  std::string catalog_path, wit_sizes = "2,4,6";
  int max_k = 64, quotient_n = 4, max_size = 10000;
  wi->add_option("--xi", xi, "target point")->required();
  wi->add_option("--delta", delta, "neighbourhood radius");
  wi->add_option("--catalog", catalog_path, "catalog JSON lines (default: planar search)");
  wi->add_option("--sizes", wit_sizes, "seed sizes for the default planar search");
  wi->add_option("--max-k", max_k, "iteration limit");
  wi->add_option("--quotient-n", quotient_n, "cells in the base quotient");
  wi->add_option("--max-size", max_size, "vertex cap for the witness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (*spec) return cmd_spectrum(cfg, random_n);
    if (*tm) return cmd_tmap(cfg, k, tmap_cap);
    if (*bd) return cmd_bands(cfg);
    if (*se) return cmd_search(cfg, sizes, planar, !no_rank2);
    if (*qu) return cmd_quotient(cfg, qn);
    if (*ce) return cmd_certify(cfg, target, cover_path, verify_path, cert_sizes);
    if (*ca) return cmd_capacity(cfg, set, points, sweeps);
    if (*wi) return cmd_witness(cfg, xi, delta, catalog_path, wit_sizes, max_k, quotient_n, max_size);
  } catch (const BadInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  }
  return kBadInput;
}

}  // namespace gapsets::cli

int main(int argc, char** argv) { return gapsets::cli::run(argc, argv); }
