#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace momentflow {

/// Scrambled Sobol sequence in up to 32 dimensions.
///
/// Direction numbers follow the Joe-Kuo construction. Scrambling composes a
/// random lower-triangular linear scramble of the digit matrices with a
/// random digital shift, keyed deterministically by (seed, replicate): equal
/// keys give bitwise-equal streams. Points are returned strictly inside
/// (0, 1) so Gaussian quantiles stay finite.
class ScrambledSobol {
 public:
  static constexpr int kMaxDim = 32;

  ScrambledSobol(int dim, std::uint64_t seed, std::uint64_t replicate = 0);

  /// Next point of the stream.
  Eigen::VectorXd next();

  /// dim x n matrix whose columns are the next n points.
  Eigen::MatrixXd generate(Eigen::Index n);

  [[nodiscard]] int dim() const { return dim_; }

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::uint32_t state_[kMaxDim] = {};
  std::uint32_t shift_[kMaxDim] = {};
  std::uint32_t directions_[kMaxDim][32] = {};
};

}  // namespace momentflow
