#pragma once

#include <json.hpp>

#include <utility>
#include <vector>

namespace gapsets {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
};

// Finite union of disjoint closed intervals plus isolated points lying outside them.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> iv, std::vector<double> pts = {});

  const std::vector<Interval>& intervals() const { return intervals_; }
  const std::vector<double>& points() const { return points_; }
  bool empty() const { return intervals_.empty() && points_.empty(); }

  bool contains(double x, double tol = 0.0) const;
  double distance(double x) const;
  // True when every point of [lo,hi] lies in the set (intervals only).
  bool covers(double lo, double hi, double tol = 0.0) const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  // Closures of the open pieces of [a,b] outside the set; pieces separated by a point stay apart.
  IntervalSet complement_in(double a, double b) const;
  bool subset_of(const IntervalSet& other, double tol = 0.0) const;

  nlohmann::json to_json() const;
  static IntervalSet from_json(const nlohmann::json& j);

 private:
  void normalize(bool merge_touching = true);
  std::vector<Interval> intervals_;
  std::vector<double> points_;
};

}  // namespace gapsets
