#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace momentflow {

/// Thrown when a numerical routine cannot proceed (e.g. a covariance stays
/// indefinite through the whole jitter ladder).
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

/// Symmetrize in place as (S + S^T) / 2.
void symmetrize(Eigen::MatrixXd& s);

/// Nearest-PSD projection: eigenvalues clipped at max(0, lambda).
/// Idempotent; total on symmetric matrices.
Eigen::MatrixXd psd_repair(const Eigen::MatrixXd& cov);

/// Multivariate normal described by its first two moments.
///
/// The covariance is symmetrized on entry, and eigenvalue-clipped whenever
/// the smallest eigenvalue falls below -1e-10 times the largest.
class Gaussian {
 public:
  Gaussian(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  /// Standard normal in `dim` dimensions.
  static Gaussian standard(Eigen::Index dim);

  [[nodiscard]] Eigen::Index dim() const { return mean_.size(); }
  [[nodiscard]] const Eigen::VectorXd& mean() const { return mean_; }
  [[nodiscard]] const Eigen::MatrixXd& cov() const { return cov_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

/// Affine map x -> matrix * x + offset.
struct LinearMap {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd offset;

  LinearMap(Eigen::MatrixXd m, Eigen::VectorXd b);
};

/// Exact distribution of map(X) for X ~ g.
Gaussian affine_pushforward(const Gaussian& g, const LinearMap& map);

/// KL divergence D(p || q) between Gaussians of equal dimension.
/// q must be positive definite after the jitter ladder; a degenerate p gives
/// +infinity.
double kl_divergence(const Gaussian& p, const Gaussian& q);

/// Cholesky factor of cov, escalating diagonal jitter from 1e-12*trace/n
/// by factors of 10 up to 1e-6*trace/n before giving up.
Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& cov);

/// Caches the Cholesky factor of one Gaussian so that many unit-cube points
/// can be pushed through its quantile transform.
class GaussianSampler {
 public:
  explicit GaussianSampler(const Gaussian& g);

  /// Maps a point of the open unit cube to a sample: mean + L * Phi^-1(u).
  [[nodiscard]] Eigen::VectorXd operator()(const Eigen::VectorXd& u) const;

  /// Column-wise batch version; u is dim x n.
  [[nodiscard]] Eigen::MatrixXd map_batch(const Eigen::MatrixXd& u) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd chol_;
};

/// One-shot convenience wrapper around GaussianSampler.
Eigen::VectorXd sample(const Gaussian& g, const Eigen::VectorXd& u);

}  // namespace momentflow
