#pragma once

#include <vector>

#include "momentflow/gaussian.hpp"
#include "momentflow/network.hpp"

namespace momentflow {

/// Exact output moments of g(X) = sigma(A X + b) + C X + d for Gaussian X.
/// Mean_i = M(mu_i; nu_ii) + (C mu)_i + d_i; the covariance assembles the
/// K map over pre-activation pairs, both orientations of the
/// activation-to-skip cross term, and the skip-path sandwich C Sigma C^T.
Gaussian layer_moment_match(const Gaussian& g, const LayerParams& layer);

/// Folds layer_moment_match over the network; returns every intermediate
/// Gaussian (one per layer, input excluded) for diagnostics.
std::vector<Gaussian> propagate_analytic(const Network& net,
                                         const Gaussian& input);

/// Moment matching with off-diagonal covariance zeroed after every layer.
Gaussian propagate_mean_field(const Network& net, const Gaussian& input);

/// First-order propagation: mean by a forward pass through the input mean,
/// covariance by the chained Jacobian sandwich.
Gaussian propagate_linear(const Network& net, const Gaussian& input);

/// Sigma-point set construction. U95 is the one-parameter family (kappa);
/// U02 the scaled three-parameter family (alpha, beta, kappa).
struct SigmaPointScheme {
  enum class Variant { U95, U02 };
  Variant variant = Variant::U95;
  double kappa = 2.0;
  double alpha = 1e-3;
  double beta = 2.0;

  static SigmaPointScheme u95(double kappa = 2.0);
  static SigmaPointScheme u02(double alpha = 1e-3, double beta = 2.0,
                              double kappa = 2.0);
};

/// Pushes the 2n+1 sigma points of the input through the network and
/// rebuilds moments with the scheme's mean/covariance weights.
Gaussian propagate_unscented(const Network& net, const Gaussian& input,
                             const SigmaPointScheme& scheme);

}  // namespace momentflow
