#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "speccalc/function_spec.hpp"

namespace speccalc {

/// Pure-point spectrum with finite multiplicities: the eigenvalue multiset of
/// a (possibly truncated) self-adjoint operator.
///
/// Invariants: eigenvalues strictly increasing, multiplicities >= 1, and when
/// `truncation_rank` is set it equals the total multiplicity. A truncation
/// rank marks the spectrum as a finite prefix of an infinite model, which
/// makes counting beyond its largest modulus meaningless.
class DiscreteSpectrum {
 public:
  struct Atom {
    double value;
    std::uint64_t multiplicity;
    friend bool operator==(const Atom&, const Atom&) = default;
  };

  DiscreteSpectrum() = default;

  /// Atoms must already be canonical; throws InvariantError otherwise.
  explicit DiscreteSpectrum(std::vector<Atom> atoms,
                            std::optional<std::uint64_t> truncation_rank = std::nullopt,
                            std::string source_label = {});

  /// Sorts and merges equal eigenvalues (exact equality).
  static DiscreteSpectrum canonical(std::vector<Atom> atoms,
                                    std::optional<std::uint64_t> truncation_rank = std::nullopt,
                                    std::string source_label = {});
  static DiscreteSpectrum from_eigenvalues(std::span<const double> eigenvalues,
                                           std::string source_label = {});
  static DiscreteSpectrum diag(std::initializer_list<double> eigenvalues);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  std::optional<std::uint64_t> truncation_rank() const { return truncation_rank_; }
  bool truncated() const { return truncation_rank_.has_value(); }
  const std::string& source_label() const { return source_label_; }
  std::uint64_t total_multiplicity() const { return total_; }

  /// Largest |lambda|, 0 for the empty spectrum.
  double max_modulus() const;
  /// Smallest |lambda| among nonzero eigenvalues, +inf when there is none.
  double min_positive_modulus() const;
  bool nonnegative() const { return atoms_.empty() || atoms_.front().value >= 0; }
  std::uint64_t multiplicity_of(double value) const;

  /// #{n : |lambda_n| <= bound}, with multiplicity.
  std::uint64_t count_modulus_at_most(double bound) const;
  /// #{n : scale * |lambda_n| <= bound} for scale > 0, without forming bound / scale.
  std::uint64_t count_scaled_modulus_at_most(double scale, double bound) const;

  /// The n eigenvalues of smallest modulus (with multiplicity; ties broken by value).
  DiscreteSpectrum smallest_modulus(std::uint64_t n) const;
  /// Eigenvalues listed with multiplicity, in increasing order.
  std::vector<double> expanded() const;

  DiscreteSpectrum with_label(std::string label) const;
  DiscreteSpectrum with_truncation_rank(std::optional<std::uint64_t> rank) const;

  friend bool operator==(const DiscreteSpectrum& a, const DiscreteSpectrum& b) {
    return a.atoms_ == b.atoms_ && a.truncation_rank_ == b.truncation_rank_ &&
           a.source_label_ == b.source_label_;
  }

 private:
  void build_modulus_index();

  std::vector<Atom> atoms_;
  std::optional<std::uint64_t> truncation_rank_;
  std::string source_label_;
  std::uint64_t total_ = 0;
  // Atom indices ordered by (|lambda|, lambda) with matching moduli and
  // cumulative multiplicities, for logarithmic counting.
  std::vector<std::size_t> modulus_order_;
  std::vector<double> sorted_modulus_;
  std::vector<std::uint64_t> cumulative_;
};

/// True when both spectra carry the same eigenvalue multiset.
inline bool same_atoms(const DiscreteSpectrum& a, const DiscreteSpectrum& b) {
  return std::equal(a.atoms().begin(), a.atoms().end(), b.atoms().begin(), b.atoms().end());
}

/// N(Lambda) = #{n : |lambda_n| <= Lambda}.
std::uint64_t counting(const DiscreteSpectrum& s, double lambda);

/// Sum of eigenvalues with multiplicity, accumulated in order of increasing modulus.
double trace(const DiscreteSpectrum& s);

/// Functional calculus f(D): maps atoms through f and merges equal images.
DiscreteSpectrum apply_calculus(const DiscreteSpectrum& s, const FunctionSpec& f);

DiscreteSpectrum direct_sum(const DiscreteSpectrum& a, const DiscreteSpectrum& b);

/// Products a*b of eigenvalues with a*b <= max_product. Both inputs must be
/// nonnegative; a zero eigenvalue paired with a truncated partner throws
/// ZeroAmbiguity.
DiscreteSpectrum tensor_product(const DiscreteSpectrum& a, const DiscreteSpectrum& b,
                                double max_product);

/// Sum over atoms of chi(lambda) f(lambda) mult with chi the linear cutoff ramp at `cutoff`.
double cutoff_trace(const DiscreteSpectrum& s, const FunctionSpec& f, double cutoff);

struct CutoffLimit {
  /// Set when two successive cutoffs differed by less than the tolerance.
  std::optional<double> value;
  std::vector<double> partial_values;

  bool converged() const { return value.has_value(); }
};

CutoffLimit cutoff_trace_limit(const DiscreteSpectrum& s, const FunctionSpec& f,
                               std::span<const double> schedule, double tol);

}  // namespace speccalc
