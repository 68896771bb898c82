#pragma once

#include <vector>

#include "momentflow/gaussian.hpp"
#include "momentflow/network.hpp"

namespace momentflow {

/// sup |sigma'| per activation; +infinity for Heaviside.
double derivative_sup(Activation kind);

/// sup |sigma''| per activation; +infinity for the kinked activations.
double second_derivative_sup(Activation kind);

/// Spectral norm by power iteration on M^T M (1e-8 relative convergence,
/// 10k iteration cap).
double spectral_norm(const Eigen::MatrixXd& m);

/// Per-layer pieces of the propagated-error recursion.
struct LayerBound {
  double lipschitz = 0.0;
  double nonnormality = 0.0;
  double cumulative = 0.0;
};

/// sup |sigma'| * ||A|| + ||C||. Infinite for Heaviside layers with a
/// nonzero activation path.
double lipschitz_bound(const LayerParams& layer);

/// Wasserstein gap between the pushed-forward layer output and its Gaussian
/// moment match: (3/sqrt2) sqrt(d) |sigma''| |sigma'| * ||Sigma_out^-1|| *
/// ||Sigma_out||^1/2 * ||A Sigma_in A^T||^3/2. Zero when the activation
/// path carries no variance; +infinity for kink activations or a singular
/// output covariance (flagged, not an error).
double nonnormality_bound(const LayerParams& layer, const Gaussian& incoming,
                          const Gaussian& outgoing);

/// Chains the per-layer bounds: cumulative_k = lipschitz_k * cumulative_{k-1}
/// + nonnormality_k with cumulative_0 = 0. Uses the analytic propagated
/// covariances as the per-layer output moments.
std::vector<LayerBound> error_recursion(const Network& net,
                                        const Gaussian& input);

}  // namespace momentflow
