#include "momentflow/ensembles.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "momentflow/special_functions.hpp"

namespace momentflow {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Uniform and normal variates via explicit quantile transforms so streams
// are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    // 53-bit mantissa in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  double normal(double stddev) {
    double u;
    do {
      u = uniform01();
    } while (u <= 0.0);
    return stddev * norm_quantile(u);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace

Architecture architecture_from_string(const std::string& name) {
  if (name == "wide") return Architecture::Wide;
  if (name == "deep") return Architecture::Deep;
  throw std::invalid_argument("unknown architecture: " + name);
}

InputVariance variance_from_string(const std::string& name) {
  if (name == "small") return InputVariance::Small;
  if (name == "medium") return InputVariance::Medium;
  if (name == "large") return InputVariance::Large;
  throw std::invalid_argument("unknown variance: " + name);
}

const char* to_string(Architecture a) {
  return a == Architecture::Wide ? "wide" : "deep";
}

const char* to_string(InputVariance v) {
  switch (v) {
    case InputVariance::Small: return "small";
    case InputVariance::Medium: return "medium";
    case InputVariance::Large: return "large";
  }
  return "?";
}

Network build_network(const EnsembleSpec& spec) {
  const int depth = spec.architecture == Architecture::Wide ? 5 : 20;
  const Eigen::Index width = spec.architecture == Architecture::Wide ? 400 : 100;
  constexpr Eigen::Index kInputDim = 3;

  Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);

  std::vector<LayerParams> layers;
  layers.reserve(depth + 1);

  Eigen::Index fan_in = kInputDim;
  for (int k = 0; k < depth; ++k) {
    LayerParams layer;
    layer.kind = spec.activation;
    layer.a.resize(width, fan_in);
    const double sd = std::sqrt(std::sqrt(2.0) / static_cast<double>(fan_in));
    for (Eigen::Index i = 0; i < width; ++i) {
      for (Eigen::Index j = 0; j < fan_in; ++j) {
        layer.a(i, j) = rng.normal(sd);
      }
    }
    layer.b.resize(width);
    if (spec.activation == Activation::Sine) {
      for (Eigen::Index i = 0; i < width; ++i) layer.b(i) = rng.uniform(-kPi, kPi);
    } else {
      for (Eigen::Index i = 0; i < width; ++i) layer.b(i) = rng.normal(1.0);
    }
    // The first hidden layer's skip block is rectangular and stays zero;
    // residual specs put the identity on every square block.
    if (spec.residual && fan_in == width) {
      layer.c = Eigen::MatrixXd::Identity(width, fan_in);
    } else {
      layer.c = Eigen::MatrixXd::Zero(width, fan_in);
    }
    layer.d = Eigen::VectorXd::Zero(width);
    layers.push_back(std::move(layer));
    fan_in = width;
  }

  // Linear output layer: no activation path. sigma(0) would add a constant
  // per output, so it is subtracted into d to keep the layer purely affine.
  LayerParams out;
  out.kind = spec.activation;
  out.a = Eigen::MatrixXd::Zero(1, fan_in);
  out.b = Eigen::VectorXd::Zero(1);
  out.c.resize(1, fan_in);
  const double sd = std::sqrt(std::sqrt(2.0) / static_cast<double>(fan_in));
  for (Eigen::Index j = 0; j < fan_in; ++j) out.c(0, j) = rng.normal(sd);
  out.d = Eigen::VectorXd::Constant(1, -activation_value(spec.activation, 0.0));
  layers.push_back(std::move(out));

  return Network(std::move(layers));
}

Gaussian input_gaussian(const EnsembleSpec& spec) {
  double v = 1.0;
  if (spec.variance == InputVariance::Small) v = 1e-2;
  if (spec.variance == InputVariance::Large) v = 1e2;
  return Gaussian(Eigen::VectorXd::Zero(3), v * Eigen::MatrixXd::Identity(3, 3));
}

}  // namespace momentflow
