#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "speccalc/axioms.hpp"
#include "speccalc/diagonal.hpp"
#include "speccalc/evaluator.hpp"
#include "speccalc/function_spec.hpp"
#include "speccalc/growth.hpp"
#include "speccalc/laplacian.hpp"
#include "speccalc/spectrum.hpp"

namespace speccalc {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become FormatError with the byte offset.
Json parse_json(std::string_view text);

/// {"atoms": [[lambda, mult], ...], "truncation_rank": n | null, "source_label": "..."}.
/// Atoms must be strictly increasing with positive integer multiplicities.
DiscreteSpectrum spectrum_from_json(const Json& j);
Json spectrum_to_json(const DiscreteSpectrum& s);
DiscreteSpectrum parse_spectrum(std::string_view text);
std::string write_spectrum(const DiscreteSpectrum& s);

/// Tagged objects {"kind": "power", "beta": 2}, {"kind": "compose", "outer": ..., "inner": ...}.
FunctionSpec function_from_json(const Json& j);
Json function_to_json(const FunctionSpec& f);

struct ProfileInput {
  TraceProfile profile;
  double c;
};

/// {"table": [[lambda, h], ...], "c": 1} or a FunctionSpec object with an optional "c" (default 1).
ProfileInput profile_from_json(const Json& j);
Json profile_to_json(const TraceProfile& h, double c);

/// {"prefix": [x1, ...], "tail": t}.
EventuallyConstantDiagonal diagonal_from_json(const Json& j);
Json diagonal_to_json(const EventuallyConstantDiagonal& x);

/// {"n": k, "edges": [[i, j], [i, j, w], ...]}, 0-indexed, default weight 1.
AdjacencyMatrix adjacency_from_json(const Json& j);

/// CSV with header `lambda,count`.
CountingSamples parse_samples(std::string_view text);
std::string write_samples(const CountingSamples& samples);

Json to_json(const GrowthClass& g);
Json to_json(const GrowthFit& fit);
Json to_json(const Operand& op);
Json to_json(const Witness& w);
Json to_json(const AxiomReport& report);

}  // namespace speccalc
