#include "momentflow/network.hpp"

#include <stdexcept>
#include <string>

namespace momentflow {

namespace {

void check_layer(const LayerParams& layer, std::size_t index,
                 Eigen::Index expected_input) {
  const std::string tag = "layer " + std::to_string(index) + ": ";
  if (layer.a.rows() != layer.b.size() || layer.c.rows() != layer.d.size() ||
      layer.a.rows() != layer.c.rows() || layer.a.cols() != layer.c.cols()) {
    throw std::invalid_argument(tag + "inconsistent parameter shapes");
  }
  if (!layer.a.allFinite() || !layer.b.allFinite() || !layer.c.allFinite() ||
      !layer.d.allFinite()) {
    throw std::invalid_argument(tag + "non-finite parameter entries");
  }
  if (expected_input >= 0 && layer.input_dim() != expected_input) {
    throw std::invalid_argument(tag + "expected input dim " +
                                std::to_string(expected_input) + ", got " +
                                std::to_string(layer.input_dim()));
  }
}

}  // namespace

Network::Network(std::vector<LayerParams> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) {
    throw std::invalid_argument("Network: needs at least one layer");
  }
  Eigen::Index expected = -1;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    check_layer(layers_[i], i, expected);
    expected = layers_[i].output_dim();
  }
}

Eigen::VectorXd eval(const LayerParams& layer, const Eigen::VectorXd& x) {
  if (x.size() != layer.input_dim()) {
    throw std::invalid_argument("eval: input dimension mismatch");
  }
  Eigen::VectorXd pre = layer.a * x + layer.b;
  for (Eigen::Index i = 0; i < pre.size(); ++i) {
    pre(i) = activation_value(layer.kind, pre(i));
  }
  return pre + layer.c * x + layer.d;
}

Eigen::VectorXd eval(const Network& net, const Eigen::VectorXd& x) {
  Eigen::VectorXd h = x;
  for (const auto& layer : net.layers()) {
    h = eval(layer, h);
  }
  return h;
}

Eigen::MatrixXd eval_batch(const Network& net, Eigen::MatrixXd x) {
  if (x.rows() != net.input_dim()) {
    throw std::invalid_argument("eval_batch: input dimension mismatch");
  }
  for (const auto& layer : net.layers()) {
    Eigen::MatrixXd pre = (layer.a * x).colwise() + layer.b;
    double* p = pre.data();
    const Eigen::Index n = pre.size();
    for (Eigen::Index i = 0; i < n; ++i) {
      p[i] = activation_value(layer.kind, p[i]);
    }
    if (layer.c.isZero(0.0)) {
      pre.colwise() += layer.d;
      x = std::move(pre);
    } else {
      x = (pre + layer.c * x).colwise() + layer.d;
    }
  }
  return x;
}

}  // namespace momentflow
