#include "momentflow/activation.hpp"

#include <cmath>
#include <stdexcept>

#include "momentflow/special_functions.hpp"

namespace momentflow {

double activation_value(Activation kind, double x) {
  switch (kind) {
    case Activation::Probit:
      return 2.0 * norm_cdf(x) - 1.0;
    case Activation::Gelu:
      return x * norm_cdf(x);
    case Activation::Relu:
      return x > 0.0 ? x : 0.0;
    case Activation::Heaviside:
      return x >= 0.0 ? 1.0 : 0.0;
    case Activation::Sine:
      return std::sin(x);
  }
  return 0.0;
}

double activation_derivative(Activation kind, double x) {
  switch (kind) {
    case Activation::Probit:
      return 2.0 * norm_pdf(x);
    case Activation::Gelu:
      return norm_cdf(x) + x * norm_pdf(x);
    case Activation::Relu:
      return x > 0.0 ? 1.0 : 0.0;
    case Activation::Heaviside:
      return 0.0;
    case Activation::Sine:
      return std::cos(x);
  }
  return 0.0;
}

const char* to_string(Activation kind) {
  switch (kind) {
    case Activation::Probit: return "probit";
    case Activation::Gelu: return "gelu";
    case Activation::Relu: return "relu";
    case Activation::Heaviside: return "heaviside";
    case Activation::Sine: return "sine";
  }
  return "?";
}

Activation activation_from_string(const std::string& name) {
  for (Activation kind : kAllActivations) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown activation: " + name);
}

}  // namespace momentflow
