#pragma once

#include <cstdint>
#include <string>

#include "speccalc/spectrum.hpp"

namespace speccalc {

enum class ModelKind { Poly, Stretched, Log };

/// Parameters of the model families. Poly uses (n / C)^{1/d}, Stretched
/// ((1/c) log(n + 1))^{1/alpha}, Log exp(n / c); the defaults give
/// diag(1, 2, ...), diag(log(n + 1)^2) and diag(e^n).
struct ModelParams {
  double d = 1.0;
  double C = 1.0;
  double c = 1.0;
  double alpha = 0.5;
};

/// First n eigenvalues of the model, truncation_rank = n. Throws
/// ParameterError for n == 0, parameters out of range, or overflow.
DiscreteSpectrum gen_model(ModelKind kind, std::uint64_t n, const ModelParams& params = {});

/// "poly", "stretched" or "log"; throws ParameterError otherwise.
ModelKind parse_model_kind(const std::string& name);
const char* to_string(ModelKind kind);

}  // namespace speccalc
