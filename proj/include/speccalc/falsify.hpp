#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "speccalc/io.hpp"
#include "speccalc/models.hpp"
#include "speccalc/spectrum.hpp"

namespace speccalc {

enum class F3Evaluator { Trace, Power2, Tail };

F3Evaluator parse_f3_evaluator(const std::string& name);
const char* to_string(F3Evaluator e);

struct RunConfig {
  std::uint64_t seed = 1;
  /// Random spectra per hidden profile (F1) and random model pairs (F4).
  std::size_t instances = 1000;
  double tol = 1e-9;
  std::size_t profiles = 20;
  /// Same-class pairs per growth class (F2).
  std::size_t pairs = 50;
  std::size_t grid_points = 80;
  /// F1 control: perturb the hidden evaluator by a spectrum-count term.
  bool sabotage = false;
  /// F2 control: claim a poly and a stretched spectrum are in the same class.
  bool inject_mixed_pair = false;
  F3Evaluator f3_evaluator = F3Evaluator::Trace;

  /// Throws ParameterError on non-positive tolerances or grids.
  void validate() const;
  Json to_json() const;
};

struct Report {
  static constexpr int schema_version = 1;

  std::string test_id;
  bool pass = false;
  std::vector<Json> witnesses;
  Json metrics = Json::object();
  std::vector<std::string> notes;
  Json config;
  std::string paper_anchor;

  Json to_json() const;
};

/// Hidden monotone profiles are calibrated on rank-one inputs and must
/// reproduce the hidden evaluator on random on-grid spectra; scaling
/// uniqueness must recover a in {0.5, 1, 2, 10}.
Report run_f1(const RunConfig& config);

/// Sum additivity and class preservation on same-class pairs, the tensor
/// bound on D_poly (x) D_poly and Power closure on the three model families.
Report run_f2(const RunConfig& config);

/// TruncateBand sequences under the chosen evaluator, with the tail-limit
/// evaluator as a control that must fail.
Report run_f3(const RunConfig& config);

/// Indicator and hat transforms separate diagonal models exactly when their
/// atom multisets differ.
Report run_f4(const RunConfig& config);

struct SuiteResult {
  std::vector<Report> reports;
  bool pass() const;
  Json to_json() const;
};

SuiteResult run_all(const RunConfig& config);

struct SameClassPair {
  ModelKind kind = ModelKind::Poly;
  DiscreteSpectrum first;
  DiscreteSpectrum second;
  /// Generator inputs, enough to rebuild both spectra with gen_model.
  ModelParams first_params;
  ModelParams second_params;
  /// Log grid over the range both spectra cover.
  std::vector<double> grid;
};

/// Two spectra drawn from one model family with random parameters.
/// Stretched pairs share a truncation horizon so neither is sampled past its end.
SameClassPair make_same_class_pair(ModelKind kind, std::mt19937_64& rng,
                                   std::size_t grid_points = 80);

}  // namespace speccalc
