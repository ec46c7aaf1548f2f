#include "speccalc/diagonal.hpp"

#include <cmath>

#include "speccalc/errors.hpp"

namespace speccalc {

EventuallyConstantDiagonal::EventuallyConstantDiagonal(std::vector<double> prefix, double tail)
    : prefix_(std::move(prefix)), tail_(tail) {
  if (!std::isfinite(tail_)) throw InvariantError("diagonal tail must be finite");
  for (double x : prefix_) {
    if (!std::isfinite(x)) throw InvariantError("diagonal entries must be finite");
  }
}

EventuallyConstantDiagonal EventuallyConstantDiagonal::projection(std::size_t k) {
  return {std::vector<double>(k, 1.0), 0.0};
}

EventuallyConstantDiagonal EventuallyConstantDiagonal::identity() { return {{}, 1.0}; }

EventuallyConstantDiagonal EventuallyConstantDiagonal::from_spectrum(const DiscreteSpectrum& s) {
  return {s.expanded(), 0.0};
}

double EventuallyConstantDiagonal::entry(std::size_t n) const {
  if (n == 0) throw ParameterError("diagonal entries are indexed from 1");
  return n <= prefix_.size() ? prefix_[n - 1] : tail_;
}

DiscreteSpectrum EventuallyConstantDiagonal::prefix_spectrum() const {
  return DiscreteSpectrum::from_eigenvalues(prefix_);
}

EventuallyConstantDiagonal EventuallyConstantDiagonal::scaled(double t) const {
  std::vector<double> p = prefix_;
  for (double& x : p) x *= t;
  return {std::move(p), tail_ * t};
}

EventuallyConstantDiagonal EventuallyConstantDiagonal::truncated(std::size_t k) const {
  std::vector<double> p(k);
  for (std::size_t n = 1; n <= k; ++n) p[n - 1] = entry(n);
  return {std::move(p), 0.0};
}

EventuallyConstantDiagonal EventuallyConstantDiagonal::with_prefix(
    std::vector<double> rewrite) const {
  std::vector<double> p = std::move(rewrite);
  for (std::size_t n = p.size() + 1; n <= prefix_.size(); ++n) p.push_back(prefix_[n - 1]);
  return {std::move(p), tail_};
}

EventuallyConstantDiagonal block_sum(const DiscreteSpectrum& finite_block,
                                     const EventuallyConstantDiagonal& x) {
  std::vector<double> p = finite_block.expanded();
  p.insert(p.end(), x.prefix().begin(), x.prefix().end());
  return {std::move(p), x.tail()};
}

}  // namespace speccalc
