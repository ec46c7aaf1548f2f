#pragma once

#include <span>
#include <vector>

namespace speccalc {

/// Real interval with independently open or closed ends. Point intervals are allowed.
class Interval {
 public:
  Interval(double lo, double hi, bool lo_closed = true, bool hi_closed = true);

  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval point(double x) { return {x, x, true, true}; }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool lo_closed() const { return lo_closed_; }
  bool hi_closed() const { return hi_closed_; }

  bool contains(double t) const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
  bool lo_closed_;
  bool hi_closed_;
};

/// Finite union of intervals; membership is the union of memberships.
using IntervalUnion = std::vector<Interval>;

bool contains(std::span<const Interval> set, double t);

}  // namespace speccalc
