#pragma once

#include <cstdint>
#include <string>

#include "momentflow/gaussian.hpp"
#include "momentflow/network.hpp"

namespace momentflow {

enum class Architecture { Wide, Deep };      // 5x400 or 20x100 hidden
enum class InputVariance { Small, Medium, Large };  // 1e-2 I, I, 1e2 I on R^3

Architecture architecture_from_string(const std::string& name);
InputVariance variance_from_string(const std::string& name);
const char* to_string(Architecture a);
const char* to_string(InputVariance v);

/// One cell of the random-network benchmark grid.
struct EnsembleSpec {
  Architecture architecture = Architecture::Wide;
  Activation activation = Activation::Probit;
  bool residual = false;
  InputVariance variance = InputVariance::Medium;
  std::uint64_t seed = 0;
};

/// Draws a network from the ensemble, deterministically in the seed.
///
/// Shapes are 3 -> width^depth -> 1 with a purely affine output layer.
/// A entries are i.i.d. N(0, sqrt(2)/fan_in); probit-family biases are
/// N(0, 1), sine biases U(-pi, pi); residual square C blocks start at the
/// identity. The output layer's weights use the same N(0, sqrt(2)/fan_in)
/// recipe on its skip matrix.
Network build_network(const EnsembleSpec& spec);

/// N(0, vI) on R^3 with v per the variance label.
Gaussian input_gaussian(const EnsembleSpec& spec);

}  // namespace momentflow
