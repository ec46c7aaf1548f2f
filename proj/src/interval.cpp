#include "speccalc/interval.hpp"

#include <algorithm>
#include <cmath>

#include "speccalc/errors.hpp"

namespace speccalc {

Interval::Interval(double lo, double hi, bool lo_closed, bool hi_closed)
    : lo_(lo), hi_(hi), lo_closed_(lo_closed), hi_closed_(hi_closed) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) {
    throw InvariantError("interval requires lo <= hi");
  }
}

bool Interval::contains(double t) const {
  const bool above = lo_closed_ ? t >= lo_ : t > lo_;
  const bool below = hi_closed_ ? t <= hi_ : t < hi_;
  return above && below;
}

bool contains(std::span<const Interval> set, double t) {
  return std::any_of(set.begin(), set.end(), [t](const Interval& b) { return b.contains(t); });
}

}  // namespace speccalc
