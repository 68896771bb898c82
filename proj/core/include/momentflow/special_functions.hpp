#pragma once

namespace momentflow {

/// Standard normal density.
double norm_pdf(double x);

/// Standard normal CDF, accurate in both tails.
double norm_cdf(double x);

/// Standard normal quantile (inverse CDF) for p in (0, 1).
/// Rational initial guess refined by one Newton step; absolute error
/// below 1e-12 over the open interval.
double norm_quantile(double p);

/// Correlation clamped away from +-1 so that sqrt(1 - rho^2) stays positive.
double clamp_correlation(double rho);

/// Density of the standard bivariate normal with correlation rho.
double bvn_pdf(double h, double k, double rho);

/// bvn_cdf(h, k; rho) - bvn_cdf(h, k; 0), evaluated as a one-dimensional
/// integral of the correlation derivative of the CDF. Computing the
/// difference directly avoids the cancellation that a plain CDF difference
/// suffers at extreme arguments. Antisymmetric in rho; zero at rho = 0.
double bvn_cdf_delta(double h, double k, double rho);

/// P[Z1 <= h, Z2 <= k] for standard normals with correlation rho.
double bvn_cdf(double h, double k, double rho);

/// Partial derivative of bvn_cdf in its first argument:
/// phi(h) * Phi((k - rho h) / sqrt(1 - rho^2)).
double bvn_cdf_dh(double h, double k, double rho);

/// Owen's T function: (1/2pi) * integral_0^a exp(-h^2(1+x^2)/2)/(1+x^2) dx.
double owens_t(double h, double a);

}  // namespace momentflow
