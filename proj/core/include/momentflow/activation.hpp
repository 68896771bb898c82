#pragma once

#include <string>

namespace momentflow {

/// The activation functions with exact closed-form Gaussian moments.
enum class Activation { Probit, Gelu, Relu, Heaviside, Sine };

/// sigma(x). Probit is the odd form 2*Phi(x) - 1; Heaviside uses the
/// right-continuous convention 1_{x >= 0}.
double activation_value(Activation kind, double x);

/// sigma'(x) where defined; ReLU uses subgradient 0 at the kink and
/// Heaviside is 0 almost everywhere.
double activation_derivative(Activation kind, double x);

const char* to_string(Activation kind);
Activation activation_from_string(const std::string& name);

inline constexpr Activation kAllActivations[] = {
    Activation::Probit, Activation::Gelu, Activation::Relu,
    Activation::Heaviside, Activation::Sine};

}  // namespace momentflow
