#include "momentflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "momentflow/qmc.hpp"
#include "momentflow/special_functions.hpp"

namespace momentflow {

SampleSet qmc_sample_network(const Network& net, const Gaussian& input,
                             Eigen::Index n, std::uint64_t seed,
                             int replicate_id) {
  if (n < 2 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("qmc_sample_network: n must be a power of two");
  }
  if (input.dim() != net.input_dim()) {
    throw std::invalid_argument("qmc_sample_network: input dimension mismatch");
  }
  ScrambledSobol sobol(static_cast<int>(input.dim()), seed,
                       static_cast<std::uint64_t>(replicate_id));
  const GaussianSampler sampler(input);
  const Eigen::MatrixXd x = sampler.map_batch(sobol.generate(n));
  SampleSet out;
  out.samples = eval_batch(net, x).transpose();
  out.replicate_id = replicate_id;
  out.seed = seed;
  return out;
}

Gaussian pseudo_true(const SampleSet& set) {
  const Eigen::Index n = set.samples.rows();
  if (n < 2) {
    throw std::invalid_argument("pseudo_true: needs at least two samples");
  }
  const Eigen::VectorXd mean = set.samples.colwise().mean();
  const Eigen::MatrixXd centered = set.samples.rowwise() - mean.transpose();
  Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n - 1);
  symmetrize(cov);
  return Gaussian(mean, psd_repair(cov));
}

double wasserstein_1d(double mean, double variance,
                      const std::vector<double>& sorted_samples) {
  if (sorted_samples.empty()) {
    throw std::invalid_argument("wasserstein_1d: empty sample set");
  }
  if (!std::is_sorted(sorted_samples.begin(), sorted_samples.end())) {
    throw std::invalid_argument("wasserstein_1d: samples must be sorted "
                                "ascending");
  }
  const auto n = static_cast<double>(sorted_samples.size());
  const double sd = variance > 0.0 ? std::sqrt(variance) : 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double p = (static_cast<double>(i) + 0.5) / n;
    const double q = sd > 0.0 ? mean + sd * norm_quantile(p) : mean;
    acc += std::abs(sorted_samples[i] - q);
  }
  return acc / n;
}

namespace {

struct MeanSe {
  double mean;
  double se;
};

MeanSe aggregate(const std::vector<double>& values) {
  const auto r = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= r;
  if (std::isinf(mean) || std::isnan(mean)) {
    return {mean, 0.0};
  }
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (r - 1.0) / r)};
}

}  // namespace

MetricReport evaluate_method(const Gaussian& approx,
                             const std::vector<SampleSet>& truth_replicates) {
  if (approx.dim() != 1) {
    throw std::invalid_argument(
        "evaluate_method: the comparison protocol is one-dimensional");
  }
  if (truth_replicates.empty()) {
    throw std::invalid_argument("evaluate_method: no replicates");
  }

  const double mean = approx.mean()(0);
  const double var = approx.cov()(0, 0);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> w1;
  std::vector<double> kl_fwd;  // KL(Y1 || approx)
  std::vector<double> kl_rev;  // KL(approx || Y1)
  for (const auto& set : truth_replicates) {
    if (set.samples.cols() != 1) {
      throw std::invalid_argument("evaluate_method: replicate is not scalar");
    }
    std::vector<double> ys(set.samples.data(),
                           set.samples.data() + set.samples.rows());
    std::sort(ys.begin(), ys.end());
    w1.push_back(wasserstein_1d(mean, var, ys));

    const Gaussian y1 = pseudo_true(set);
    try {
      kl_fwd.push_back(kl_divergence(y1, approx));
    } catch (const numerical_error&) {
      kl_fwd.push_back(kInf);
    }
    try {
      kl_rev.push_back(kl_divergence(approx, y1));
    } catch (const numerical_error&) {
      kl_rev.push_back(kInf);
    }
  }

  const MeanSe w = aggregate(w1);
  const MeanSe f = aggregate(kl_fwd);
  const MeanSe r = aggregate(kl_rev);
  return MetricReport{approx, w.mean, w.se, f.mean, r.mean, f.se};
}

}  // namespace momentflow
