#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

#include "momentflow/activation.hpp"

namespace momentflow {

/// One residual layer g(x) = sigma(A x + b) + C x + d.
struct LayerParams {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::MatrixXd c;
  Eigen::VectorXd d;
  Activation kind = Activation::Relu;

  [[nodiscard]] Eigen::Index input_dim() const { return a.cols(); }
  [[nodiscard]] Eigen::Index output_dim() const { return a.rows(); }
};

/// Ordered layer list with validated shape chaining.
class Network {
 public:
  explicit Network(std::vector<LayerParams> layers);

  [[nodiscard]] const std::vector<LayerParams>& layers() const {
    return layers_;
  }
  [[nodiscard]] std::size_t depth() const { return layers_.size(); }
  [[nodiscard]] Eigen::Index input_dim() const {
    return layers_.front().input_dim();
  }
  [[nodiscard]] Eigen::Index output_dim() const {
    return layers_.back().output_dim();
  }

 private:
  std::vector<LayerParams> layers_;
};

/// Deterministic forward pass of one layer.
Eigen::VectorXd eval(const LayerParams& layer, const Eigen::VectorXd& x);

/// Deterministic forward pass of the whole network.
Eigen::VectorXd eval(const Network& net, const Eigen::VectorXd& x);

/// Column-wise batch forward pass; x is input_dim x n.
Eigen::MatrixXd eval_batch(const Network& net, Eigen::MatrixXd x);

/// JSON (de)serialization. The document is
///   {"layers": [{"kind": ..., "a": [[...]], "b": [...], "c": [[...]],
///                "d": [...]}, ...]}
/// with matrices as row-major nested arrays. Dimensions are validated on
/// load; failures throw std::invalid_argument naming the offending layer.
Network load_network(const std::filesystem::path& path);
Network parse_network(const std::string& json_text);
std::string network_to_json(const Network& net);
void save_network(const Network& net, const std::filesystem::path& path);

}  // namespace momentflow
