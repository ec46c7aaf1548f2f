#include "speccalc/models.hpp"

#include <cmath>
#include <vector>

#include "speccalc/errors.hpp"

namespace speccalc {

DiscreteSpectrum gen_model(ModelKind kind, std::uint64_t n, const ModelParams& params) {
  if (n == 0) throw ParameterError("model size must be >= 1");
  std::vector<DiscreteSpectrum::Atom> atoms;
  atoms.reserve(n);
  std::string label;
  switch (kind) {
    case ModelKind::Poly:
      if (!(params.d > 0) || !(params.C > 0)) throw ParameterError("poly model needs d, C > 0");
      for (std::uint64_t k = 1; k <= n; ++k) {
        const double x = static_cast<double>(k) / params.C;
        atoms.push_back({params.d == 1.0 ? x : std::pow(x, 1.0 / params.d), 1});
      }
      label = "poly";
      break;
    case ModelKind::Stretched:
      if (!(params.c > 0)) throw ParameterError("stretched model needs c > 0");
      if (!(params.alpha > 0 && params.alpha < 1)) {
        throw ParameterError("stretched model needs alpha in (0, 1)");
      }
      for (std::uint64_t k = 1; k <= n; ++k) {
        const double base = std::log(static_cast<double>(k) + 1.0) / params.c;
        atoms.push_back({std::pow(base, 1.0 / params.alpha), 1});
      }
      label = "stretched";
      break;
    case ModelKind::Log:
      if (!(params.c > 0)) throw ParameterError("log model needs c > 0");
      for (std::uint64_t k = 1; k <= n; ++k) {
        atoms.push_back({std::exp(static_cast<double>(k) / params.c), 1});
      }
      label = "log";
      break;
  }
  for (const auto& a : atoms) {
    if (!std::isfinite(a.value)) throw ParameterError("model eigenvalues overflow at this size");
  }
  return DiscreteSpectrum::canonical(std::move(atoms), n, label);
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "poly") return ModelKind::Poly;
  if (name == "stretched") return ModelKind::Stretched;
  if (name == "log") return ModelKind::Log;
  throw ParameterError("unknown model kind '" + name + "'");
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Poly:
      return "poly";
    case ModelKind::Stretched:
      return "stretched";
    case ModelKind::Log:
      return "log";
  }
  return "unknown";
}

}  // namespace speccalc
