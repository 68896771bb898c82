#pragma once

#include <cstdint>
#include <vector>

#include "momentflow/gaussian.hpp"
#include "momentflow/network.hpp"

namespace momentflow {

/// One quasi-Monte-Carlo realization of the network output distribution.
struct SampleSet {
  Eigen::MatrixXd samples;  // n x output_dim
  int replicate_id = 0;
  std::uint64_t seed = 0;
};

/// Pushes n scrambled low-discrepancy points through the input Gaussian's
/// quantile transform and the network. n must be a power of two; output is
/// deterministic in (seed, replicate_id).
SampleSet qmc_sample_network(const Network& net, const Gaussian& input,
                             Eigen::Index n, std::uint64_t seed,
                             int replicate_id = 0);

/// Gaussian sharing the sample set's empirical mean and (unbiased)
/// covariance, PSD-repaired.
Gaussian pseudo_true(const SampleSet& samples);

/// Quantile-grid estimator of the 1-D Wasserstein-1 distance between a
/// Gaussian and an empirical sample: mean |y_(i) - Q((i - 1/2)/N)| over the
/// ascending order statistics. A zero-variance Gaussian degenerates to the
/// mean absolute deviation around its mean. Rejects unsorted input.
double wasserstein_1d(double mean, double variance,
                      const std::vector<double>& sorted_samples);

/// Accuracy metrics of one approximating Gaussian, aggregated over
/// independent ground-truth replicates as mean +- standard error.
struct MetricReport {
  Gaussian moments;
  double wasserstein = 0.0;
  double wasserstein_se = 0.0;
  double kl_truth_to_method = 0.0;  // KL(Y1 || method)
  double kl_method_to_truth = 0.0;  // KL(method || Y1)
  double kl_se = 0.0;               // standard error of kl_truth_to_method
};

/// Evaluates a scalar approximating Gaussian against ground-truth
/// replicates: per replicate, the Wasserstein distance to the samples and
/// both KL directions against that replicate's pseudo-true Gaussian.
/// Infinite KL values poison the mean to infinity with a zero SE.
MetricReport evaluate_method(const Gaussian& approx,
                             const std::vector<SampleSet>& truth_replicates);

}  // namespace momentflow
