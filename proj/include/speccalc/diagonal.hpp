#pragma once

#include <cstddef>
#include <vector>

#include "speccalc/spectrum.hpp"

namespace speccalc {

/// Bounded diagonal operator diag(x_1, ..., x_m, t, t, ...) on l2(N): a finite
/// prefix followed by a constant tail.
class EventuallyConstantDiagonal {
 public:
  EventuallyConstantDiagonal() = default;
  EventuallyConstantDiagonal(std::vector<double> prefix, double tail);

  /// P_k = diag(1, ..., 1, 0, 0, ...) with k ones.
  static EventuallyConstantDiagonal projection(std::size_t k);
  static EventuallyConstantDiagonal identity();
  /// Zero-padded finite operator.
  static EventuallyConstantDiagonal from_spectrum(const DiscreteSpectrum& s);

  const std::vector<double>& prefix() const { return prefix_; }
  double tail() const { return tail_; }
  /// x_n for n >= 1.
  double entry(std::size_t n) const;

  bool finite_rank() const { return tail_ == 0.0; }
  /// Multiset of the prefix entries.
  DiscreteSpectrum prefix_spectrum() const;

  EventuallyConstantDiagonal scaled(double t) const;
  /// diag(x_1, ..., x_k, 0, 0, ...).
  EventuallyConstantDiagonal truncated(std::size_t k) const;
  /// Replaces the first entries by `rewrite`; the tail is untouched.
  EventuallyConstantDiagonal with_prefix(std::vector<double> rewrite) const;

  friend bool operator==(const EventuallyConstantDiagonal&,
                         const EventuallyConstantDiagonal&) = default;

 private:
  std::vector<double> prefix_;
  double tail_ = 0.0;
};

/// Block-diagonal sum with the finite block first: diag(s, x).
EventuallyConstantDiagonal block_sum(const DiscreteSpectrum& finite_block,
                                     const EventuallyConstantDiagonal& x);

}  // namespace speccalc
