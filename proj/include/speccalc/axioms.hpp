#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "speccalc/diagonal.hpp"
#include "speccalc/evaluator.hpp"
#include "speccalc/spectrum.hpp"

namespace speccalc {

enum class Axiom { A1, A2, A3, A4, A5 };

inline constexpr std::array<Axiom, 5> kAllAxioms{Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A4,
                                                 Axiom::A5};

const char* axiom_id(Axiom a);
const char* axiom_name(Axiom a);

enum class Verdict { Pass, Fail, NotApplicable };

const char* to_string(Verdict v);

using Operand = std::variant<DiscreteSpectrum, EventuallyConstantDiagonal>;

/// Inputs and the two sides of the identity that failed to hold.
struct Witness {
  std::string description;
  std::vector<Operand> operands;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct AxiomRecord {
  Axiom axiom = Axiom::A1;
  Verdict verdict = Verdict::NotApplicable;
  std::size_t instances = 0;
  double max_deviation = 0.0;
  std::optional<Witness> witness;
  std::string note;
};

struct AxiomReport {
  std::string evaluator;
  EvaluatorDomain domain = EvaluatorDomain::FiniteSpectra;
  std::array<AxiomRecord, 5> records;

  const AxiomRecord& operator[](Axiom a) const { return records[static_cast<int>(a)]; }
  AxiomRecord& operator[](Axiom a) { return records[static_cast<int>(a)]; }
  std::vector<Axiom> failed() const;
  bool all_pass() const { return failed().empty(); }
};

struct AuditConfig {
  std::uint64_t seed = 1;
  std::size_t instances = 200;
  /// Largest number of distinct atoms (or diagonal prefix length) per instance.
  std::size_t max_atoms = 8;
  std::uint64_t max_multiplicity = 3;
  /// Random atoms are multiples of 1/8 in (0, max_value].
  double max_value = 16.0;
  /// Dimension n of the identities I_n used for A4 domination and A5.
  std::uint64_t dimension = 4;
  double tol = 1e-9;
  std::vector<double> scaling_grid{0.0, 0.5, 1.0, 2.0, 3.5, 10.0};
  /// Length of the P_k sequence on the eventually-constant domain.
  std::size_t k_max = 10;
};

/// Checks A1-A5 on seeded random instances from the evaluator's declared domain.
///
/// A1: equal atom multisets (relabeled, permuted) evaluate equally.
/// A2: E(X (+) Y) = E(X) + E(Y).
/// A3: E(sum lambda_j P_j) = sum E(lambda_j P_j); the first instance is two
///     rank-one blocks at lambda = 1.
/// A4: along TruncateBand(k) sequences dominated by max|lambda| I_n, E(X_k)
///     reaches E(X); on eventually-constant diagonals, P_k increasing to I.
/// A5: E(t I) = t E(I) on the scaling grid with 0 < E(I) < inf.
///
/// Integral values are compared exactly, others to relative tol.
AxiomReport audit_axioms(const Evaluator& e, const AuditConfig& config = {});

/// Exact equality when both values are integers, relative gap <= tol otherwise.
bool values_agree(double lhs, double rhs, double tol);

}  // namespace speccalc
