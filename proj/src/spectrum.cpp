#include "speccalc/spectrum.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "speccalc/errors.hpp"
#include "speccalc/numeric.hpp"

namespace speccalc {

namespace {

std::uint64_t total_of(const std::vector<DiscreteSpectrum::Atom>& atoms) {
  std::uint64_t total = 0;
  for (const auto& a : atoms) total += a.multiplicity;
  return total;
}

std::optional<std::uint64_t> combined_rank(const DiscreteSpectrum& a, const DiscreteSpectrum& b,
                                           std::uint64_t total) {
  if (a.truncated() || b.truncated()) return total;
  return std::nullopt;
}

}  // namespace

DiscreteSpectrum::DiscreteSpectrum(std::vector<Atom> atoms,
                                   std::optional<std::uint64_t> truncation_rank,
                                   std::string source_label)
    : atoms_(std::move(atoms)),
      truncation_rank_(truncation_rank),
      source_label_(std::move(source_label)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!std::isfinite(atoms_[i].value)) {
      throw InvariantError("eigenvalues must be finite");
    }
    if (atoms_[i].multiplicity == 0) {
      throw InvariantError("multiplicities must be >= 1");
    }
    if (i > 0 && !(atoms_[i - 1].value < atoms_[i].value)) {
      throw InvariantError("eigenvalues must be strictly increasing");
    }
  }
  total_ = total_of(atoms_);
  if (truncation_rank_ && *truncation_rank_ != total_) {
    throw InvariantError("truncation rank " + std::to_string(*truncation_rank_) +
                         " differs from total multiplicity " + std::to_string(total_));
  }
  build_modulus_index();
}

DiscreteSpectrum DiscreteSpectrum::canonical(std::vector<Atom> atoms,
                                             std::optional<std::uint64_t> truncation_rank,
                                             std::string source_label) {
  for (const auto& a : atoms) {
    if (std::isnan(a.value)) throw InvariantError("eigenvalues must not be NaN");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.value < y.value; });
  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (a.multiplicity == 0) continue;
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().multiplicity += a.multiplicity;
    } else {
      merged.push_back(a);
    }
  }
  return DiscreteSpectrum(std::move(merged), truncation_rank, std::move(source_label));
}

DiscreteSpectrum DiscreteSpectrum::from_eigenvalues(std::span<const double> eigenvalues,
                                                    std::string source_label) {
  std::vector<Atom> atoms;
  atoms.reserve(eigenvalues.size());
  for (double v : eigenvalues) atoms.push_back({v, 1});
  return canonical(std::move(atoms), std::nullopt, std::move(source_label));
}

DiscreteSpectrum DiscreteSpectrum::diag(std::initializer_list<double> eigenvalues) {
  return from_eigenvalues(std::span<const double>(eigenvalues.begin(), eigenvalues.size()));
}

void DiscreteSpectrum::build_modulus_index() {
  modulus_order_.resize(atoms_.size());
  std::iota(modulus_order_.begin(), modulus_order_.end(), std::size_t{0});
  if (!nonnegative()) {
    std::sort(modulus_order_.begin(), modulus_order_.end(), [this](std::size_t i, std::size_t j) {
      const double mi = std::abs(atoms_[i].value);
      const double mj = std::abs(atoms_[j].value);
      return mi != mj ? mi < mj : atoms_[i].value < atoms_[j].value;
    });
  }
  sorted_modulus_.resize(atoms_.size());
  cumulative_.resize(atoms_.size());
  std::uint64_t running = 0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const Atom& a = atoms_[modulus_order_[k]];
    sorted_modulus_[k] = std::abs(a.value);
    running += a.multiplicity;
    cumulative_[k] = running;
  }
}

double DiscreteSpectrum::max_modulus() const {
  return sorted_modulus_.empty() ? 0.0 : sorted_modulus_.back();
}

double DiscreteSpectrum::min_positive_modulus() const {
  const auto it = std::upper_bound(sorted_modulus_.begin(), sorted_modulus_.end(), 0.0);
  return it == sorted_modulus_.end() ? std::numeric_limits<double>::infinity() : *it;
}

std::uint64_t DiscreteSpectrum::multiplicity_of(double value) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), value,
                                   [](const Atom& a, double v) { return a.value < v; });
  return (it != atoms_.end() && it->value == value) ? it->multiplicity : 0;
}

std::uint64_t DiscreteSpectrum::count_modulus_at_most(double bound) const {
  const auto it = std::upper_bound(sorted_modulus_.begin(), sorted_modulus_.end(), bound);
  const auto k = static_cast<std::size_t>(it - sorted_modulus_.begin());
  return k == 0 ? 0 : cumulative_[k - 1];
}

std::uint64_t DiscreteSpectrum::count_scaled_modulus_at_most(double scale, double bound) const {
  const auto it = std::partition_point(sorted_modulus_.begin(), sorted_modulus_.end(),
                                       [&](double m) { return scale * m <= bound; });
  const auto k = static_cast<std::size_t>(it - sorted_modulus_.begin());
  return k == 0 ? 0 : cumulative_[k - 1];
}

DiscreteSpectrum DiscreteSpectrum::smallest_modulus(std::uint64_t n) const {
  std::vector<Atom> kept;
  std::uint64_t remaining = n;
  for (std::size_t k = 0; k < modulus_order_.size() && remaining > 0; ++k) {
    const Atom& a = atoms_[modulus_order_[k]];
    const std::uint64_t take = std::min(a.multiplicity, remaining);
    kept.push_back({a.value, take});
    remaining -= take;
  }
  return canonical(std::move(kept), std::nullopt, source_label_);
}

std::vector<double> DiscreteSpectrum::expanded() const {
  std::vector<double> out;
  out.reserve(total_);
  for (const auto& a : atoms_) out.insert(out.end(), a.multiplicity, a.value);
  return out;
}

DiscreteSpectrum DiscreteSpectrum::with_label(std::string label) const {
  DiscreteSpectrum copy = *this;
  copy.source_label_ = std::move(label);
  return copy;
}

DiscreteSpectrum DiscreteSpectrum::with_truncation_rank(std::optional<std::uint64_t> rank) const {
  return DiscreteSpectrum(atoms_, rank, source_label_);
}

std::uint64_t counting(const DiscreteSpectrum& s, double lambda) {
  if (!(lambda >= 0)) return 0;
  return s.count_modulus_at_most(lambda);
}

double trace(const DiscreteSpectrum& s) {
  // Accumulate small moduli first.
  std::vector<const DiscreteSpectrum::Atom*> order;
  order.reserve(s.size());
  for (const auto& a : s.atoms()) order.push_back(&a);
  std::stable_sort(order.begin(), order.end(), [](const auto* x, const auto* y) {
    return std::abs(x->value) < std::abs(y->value);
  });
  CompensatedSum sum;
  for (const auto* a : order) sum += a->value * static_cast<double>(a->multiplicity);
  return sum.value();
}

DiscreteSpectrum apply_calculus(const DiscreteSpectrum& s, const FunctionSpec& f) {
  std::vector<DiscreteSpectrum::Atom> image;
  image.reserve(s.size());
  for (const auto& a : s.atoms()) image.push_back({f(a.value), a.multiplicity});
  return DiscreteSpectrum::canonical(std::move(image), s.truncation_rank(),
                                     f.describe() + "(" + s.source_label() + ")");
}

DiscreteSpectrum direct_sum(const DiscreteSpectrum& a, const DiscreteSpectrum& b) {
  std::vector<DiscreteSpectrum::Atom> atoms(a.atoms().begin(), a.atoms().end());
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  const std::uint64_t total = a.total_multiplicity() + b.total_multiplicity();
  return DiscreteSpectrum::canonical(std::move(atoms), combined_rank(a, b, total),
                                     a.source_label() + "+" + b.source_label());
}

DiscreteSpectrum tensor_product(const DiscreteSpectrum& a, const DiscreteSpectrum& b,
                                double max_product) {
  if (!(max_product > 0)) throw ParameterError("tensor product needs max_product > 0");
  if (!a.nonnegative() || !b.nonnegative()) {
    throw DomainError("tensor product is defined for nonnegative spectra only");
  }
  if ((a.multiplicity_of(0.0) > 0 && b.truncated()) ||
      (b.multiplicity_of(0.0) > 0 && a.truncated())) {
    throw ZeroAmbiguity("zero eigenvalue tensored with a truncated infinite model");
  }
  std::vector<DiscreteSpectrum::Atom> products;
  for (const auto& x : a.atoms()) {
    if (x.value == 0.0) {
      if (b.total_multiplicity() > 0) {
        products.push_back({0.0, x.multiplicity * b.total_multiplicity()});
      }
      continue;
    }
    for (const auto& y : b.atoms()) {
      const double p = x.value * y.value;
      if (p > max_product) break;
      products.push_back({p, x.multiplicity * y.multiplicity});
    }
  }
  const std::uint64_t total = total_of(products);
  return DiscreteSpectrum::canonical(std::move(products), combined_rank(a, b, total),
                                     a.source_label() + "*" + b.source_label());
}

double cutoff_trace(const DiscreteSpectrum& s, const FunctionSpec& f, double cutoff) {
  const FunctionSpec chi = FunctionSpec::cutoff_ramp(cutoff);
  CompensatedSum sum;
  for (const auto& a : s.atoms()) {
    const double fv = f(a.value);
    sum += chi(a.value) * fv * static_cast<double>(a.multiplicity);
  }
  return sum.value();
}

CutoffLimit cutoff_trace_limit(const DiscreteSpectrum& s, const FunctionSpec& f,
                               std::span<const double> schedule, double tol) {
  if (!(tol > 0)) throw ParameterError("cutoff limit needs tol > 0");
  if (schedule.empty()) throw ParameterError("cutoff schedule is empty");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i - 1] < schedule[i])) {
      throw ParameterError("cutoff schedule must be strictly increasing");
    }
  }
  CutoffLimit out;
  for (double cutoff : schedule) {
    const double v = cutoff_trace(s, f, cutoff);
    if (!out.partial_values.empty() && std::abs(v - out.partial_values.back()) < tol) {
      out.partial_values.push_back(v);
      out.value = v;
      return out;
    }
    out.partial_values.push_back(v);
  }
  return out;
}

}  // namespace speccalc
