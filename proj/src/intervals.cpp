#include "gapsets/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gapsets {

IntervalSet::IntervalSet(std::vector<Interval> iv, std::vector<double> pts)
    : intervals_(std::move(iv)), points_(std::move(pts)) {
  normalize();
}

void IntervalSet::normalize(bool merge_touching) {
  for (const auto& i : intervals_)
    if (!(i.lo <= i.hi)) throw std::invalid_argument("interval with lo > hi");
  std::sort(intervals_.begin(), intervals_.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const auto& i : intervals_) {
    if (!merged.empty() && (i.lo < merged.back().hi || (merge_touching && i.lo == merged.back().hi))) {
      merged.back().hi = std::max(merged.back().hi, i.hi);
    } else {
      merged.push_back(i);
    }
  }
  intervals_ = std::move(merged);
  std::vector<double> pts;
  for (double p : points_)
    if (std::none_of(intervals_.begin(), intervals_.end(), [p](const Interval& i) { return i.contains(p); }))
      pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  points_ = std::move(pts);
}

bool IntervalSet::contains(double x, double tol) const {
  for (const auto& i : intervals_)
    if (i.contains(x, tol)) return true;
  for (double p : points_)
    if (std::abs(p - x) <= tol) return true;
  return false;
}

double IntervalSet::distance(double x) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& i : intervals_) {
    if (i.contains(x)) return 0.0;
    d = std::min(d, std::min(std::abs(x - i.lo), std::abs(x - i.hi)));
  }
  for (double p : points_) d = std::min(d, std::abs(x - p));
  return d;
}

bool IntervalSet::covers(double lo, double hi, double tol) const {
  for (const auto& i : intervals_)
    if (i.lo <= lo + tol && i.hi >= hi - tol) return true;
  return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  auto iv = intervals_;
  iv.insert(iv.end(), other.intervals_.begin(), other.intervals_.end());
  auto pts = points_;
  pts.insert(pts.end(), other.points_.begin(), other.points_.end());
  return IntervalSet(std::move(iv), std::move(pts));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> iv;
  for (const auto& a : intervals_)
    for (const auto& b : other.intervals_) {
      double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
      if (lo <= hi) iv.push_back({lo, hi});
    }
  std::vector<double> pts;
  for (double p : points_)
    if (other.contains(p)) pts.push_back(p);
  for (double p : other.points_)
    if (contains(p)) pts.push_back(p);
  return IntervalSet(std::move(iv), std::move(pts));
}

IntervalSet IntervalSet::complement_in(double a, double b) const {
  std::vector<Interval> pieces;
  for (const auto& i : intervals_) pieces.push_back(i);
  for (double p : points_) pieces.push_back({p, p});
  std::sort(pieces.begin(), pieces.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> out;
  double cur = a;
  for (const auto& p : pieces) {
    if (p.hi < a || p.lo > b) continue;
    if (p.lo > cur) out.push_back({cur, p.lo});
    cur = std::max(cur, p.hi);
  }
  if (cur < b) out.push_back({cur, b});
  IntervalSet r;
  r.intervals_ = std::move(out);
  r.normalize(false);
  return r;
}

bool IntervalSet::subset_of(const IntervalSet& other, double tol) const {
  for (const auto& i : intervals_)
    if (!other.covers(i.lo, i.hi, tol)) return false;
  for (double p : points_)
    if (!other.contains(p, tol)) return false;
  return true;
}

nlohmann::json IntervalSet::to_json() const {
  nlohmann::json j;
  j["intervals"] = nlohmann::json::array();
  for (const auto& i : intervals_) j["intervals"].push_back({i.lo, i.hi});
  j["points"] = points_;
  return j;
}

IntervalSet IntervalSet::from_json(const nlohmann::json& j) {
  std::vector<Interval> iv;
  for (const auto& p : j.at("intervals")) iv.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  std::vector<double> pts;
  if (j.contains("points")) pts = j["points"].get<std::vector<double>>();
  IntervalSet r;
  r.intervals_ = std::move(iv);
  r.points_ = std::move(pts);
  r.normalize(false);
  return r;
}

}  // namespace gapsets
