#pragma once

#include "momentflow/activation.hpp"

namespace momentflow {

/// Moments of one pre-activation coordinate: X ~ N(mu, nu), nu >= 0.
struct UniMoment {
  double mu = 0.0;
  double nu = 0.0;
};

/// Joint moments of a pre-activation pair. nu12 is projected onto the
/// Cauchy-Schwarz ball (with margin 1e-12) before any correlation is formed.
struct BiMoment {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double nu11 = 0.0;
  double nu22 = 0.0;
  double nu12 = 0.0;
};

/// E sigma(X) for X ~ N(u.mu, u.nu).
double activation_mean(Activation kind, const UniMoment& u);

/// Cov(sigma(X1), sigma(X2)) for jointly normal (X1, X2) ~ b.
double activation_cov(Activation kind, const BiMoment& b);

/// Cov(sigma(X1), X2); uses only b.mu1, b.nu11, b.nu12 (Stein reduction).
double activation_cross_cov(Activation kind, const BiMoment& b);

/// Diagnostic: lambda^-1 * activation_mean(Gelu, {lambda mu, lambda^2 nu}).
/// Converges to the ReLU mean as lambda grows.
double relu_mean_via_gelu(const UniMoment& u, double lambda);

/// Extra diagonal variance contributed by a stochastic +-1 activation whose
/// firing probability is Phi(pre-activation): 4 E Phi(xi)(1 - Phi(xi)) =
/// 8 T(mu / sqrt(1 + nu), 1 / sqrt(1 + 2 nu)).
double stochastic_activation_variance(const UniMoment& u);

}  // namespace momentflow
