#include "momentflow/moments.hpp"

#include <algorithm>
#include <cmath>

#include "momentflow/special_functions.hpp"

namespace momentflow {

namespace {

// Below this, a variance is treated as exactly zero: the coordinate is
// deterministic and the kinked maps switch to their analytic limits.
constexpr double kNuEps = 1e-12;

double cs_project(double nu12, double nu11, double nu22) {
  const double bound = std::sqrt(std::max(nu11, 0.0) * std::max(nu22, 0.0)) *
                       (1.0 - 1e-12);
  return std::clamp(nu12, -bound, bound);
}

// ---- probit: sigma(x) = 2 Phi(x) - 1

double probit_mean(double mu, double nu) {
  return 2.0 * norm_cdf(mu / std::sqrt(1.0 + nu)) - 1.0;
}

double probit_cov(double m1, double m2, double n11, double n22, double n12) {
  const double s1 = std::sqrt(1.0 + n11);
  const double s2 = std::sqrt(1.0 + n22);
  return 4.0 * bvn_cdf_delta(m1 / s1, m2 / s2, n12 / (s1 * s2));
}

double probit_cross(double m1, double n11, double n12) {
  const double s = std::sqrt(1.0 + n11);
  return n12 * (2.0 / s * norm_pdf(m1 / s));
}

// ---- GeLU: sigma(x) = x Phi(x)

double gelu_mean(double mu, double nu) {
  const double s = std::sqrt(1.0 + nu);
  const double h = mu / s;
  return nu / s * norm_pdf(h) + mu * norm_cdf(h);
}

double gelu_cov(double m1, double m2, double n11, double n22, double n12) {
  const double d1 = 1.0 + n11;
  const double d2 = 1.0 + n22;
  const double s1 = std::sqrt(d1);
  const double s2 = std::sqrt(d2);
  const double h1 = m1 / s1;
  const double h2 = m2 / s2;
  const double rho = n12 / (s1 * s2);

  const double t1 =
      (m1 * n12 + m2 * n11 - m1 * n12 * n11 / d1) / s1 * bvn_cdf_dh(h1, h2, rho);
  const double t2 =
      (m2 * n12 + m1 * n22 - m2 * n12 * n22 / d2) / s2 * bvn_cdf_dh(h2, h1, rho);
  const double t3 = (n11 * n22 + n12 * n12 * (1.0 - n11 / d1 - n22 / d2)) /
                    (s1 * s2) * bvn_pdf(h1, h2, rho);
  const double t4 = (m1 * m2 + n12) * bvn_cdf(h1, h2, rho);
  return t1 + t2 + t3 + t4 - gelu_mean(m1, n11) * gelu_mean(m2, n22);
}

double gelu_cross(double m1, double n11, double n12) {
  const double d = 1.0 + n11;
  const double s = std::sqrt(d);
  const double h = m1 / s;
  return n12 * (m1 / (d * s) * norm_pdf(h) + norm_cdf(h));
}

// ---- ReLU

double relu_mean(double mu, double nu) {
  if (nu < kNuEps) return mu > 0.0 ? mu : 0.0;
  const double t = std::sqrt(nu);
  const double g = mu / t;
  return t * norm_pdf(g) + mu * norm_cdf(g);
}

double relu_cov(double m1, double m2, double n11, double n22, double n12) {
  if (n11 < kNuEps || n22 < kNuEps) return 0.0;
  const double t1 = std::sqrt(n11);
  const double t2 = std::sqrt(n22);
  const double g1 = m1 / t1;
  const double g2 = m2 / t2;
  const double rho = n12 / (t1 * t2);
  return m2 * t1 * bvn_cdf_dh(g1, g2, rho) + m1 * t2 * bvn_cdf_dh(g2, g1, rho) +
         (t1 * t2 - n12 * n12 / (t1 * t2)) * bvn_pdf(g1, g2, rho) +
         (m1 * m2 + n12) * bvn_cdf(g1, g2, rho) -
         relu_mean(m1, n11) * relu_mean(m2, n22);
}

double relu_cross(double m1, double n11, double n12) {
  if (n11 < kNuEps) return n12 * (m1 > 0.0 ? 1.0 : 0.0);
  return n12 * norm_cdf(m1 / std::sqrt(n11));
}

// ---- Heaviside: 1_{x >= 0}

double heaviside_mean(double mu, double nu) {
  if (nu < kNuEps) return mu >= 0.0 ? 1.0 : 0.0;
  return norm_cdf(mu / std::sqrt(nu));
}

double heaviside_cov(double m1, double m2, double n11, double n22, double n12) {
  if (n11 < kNuEps || n22 < kNuEps) return 0.0;
  const double t1 = std::sqrt(n11);
  const double t2 = std::sqrt(n22);
  return bvn_cdf_delta(m1 / t1, m2 / t2, n12 / (t1 * t2));
}

double heaviside_cross(double m1, double n11, double n12) {
  if (n11 < kNuEps) return 0.0;
  const double t = std::sqrt(n11);
  return n12 * (norm_pdf(m1 / t) / t);
}

// ---- sine

double sine_mean(double mu, double nu) {
  return std::exp(-0.5 * nu) * std::sin(mu);
}

double sine_cov(double m1, double m2, double n11, double n22, double n12) {
  const double ns = -0.5 * (n11 + n22);
  return 0.5 * (std::exp(ns + n12) - std::exp(ns)) * std::cos(m1 - m2) -
         0.5 * (std::exp(ns - n12) - std::exp(ns)) * std::cos(m1 + m2);
}

double sine_cross(double m1, double n11, double n12) {
  return n12 * (std::exp(-0.5 * n11) * std::cos(m1));
}

}  // namespace

double activation_mean(Activation kind, const UniMoment& u) {
  const double nu = std::max(u.nu, 0.0);
  switch (kind) {
    case Activation::Probit: return probit_mean(u.mu, nu);
    case Activation::Gelu: return gelu_mean(u.mu, nu);
    case Activation::Relu: return relu_mean(u.mu, nu);
    case Activation::Heaviside: return heaviside_mean(u.mu, nu);
    case Activation::Sine: return sine_mean(u.mu, nu);
  }
  return 0.0;
}

double activation_cov(Activation kind, const BiMoment& b) {
  const double n11 = std::max(b.nu11, 0.0);
  const double n22 = std::max(b.nu22, 0.0);
  const double n12 = cs_project(b.nu12, n11, n22);
  if (n12 == 0.0 && kind != Activation::Sine) {
    // Independent coordinates: every map below vanishes; skip the
    // quadratures. (Sine is cheap and handles it exactly anyway.)
    return 0.0;
  }
  switch (kind) {
    case Activation::Probit: return probit_cov(b.mu1, b.mu2, n11, n22, n12);
    case Activation::Gelu: return gelu_cov(b.mu1, b.mu2, n11, n22, n12);
    case Activation::Relu: return relu_cov(b.mu1, b.mu2, n11, n22, n12);
    case Activation::Heaviside:
      return heaviside_cov(b.mu1, b.mu2, n11, n22, n12);
    case Activation::Sine: return sine_cov(b.mu1, b.mu2, n11, n22, n12);
  }
  return 0.0;
}

double activation_cross_cov(Activation kind, const BiMoment& b) {
  const double n11 = std::max(b.nu11, 0.0);
  switch (kind) {
    case Activation::Probit: return probit_cross(b.mu1, n11, b.nu12);
    case Activation::Gelu: return gelu_cross(b.mu1, n11, b.nu12);
    case Activation::Relu: return relu_cross(b.mu1, n11, b.nu12);
    case Activation::Heaviside: return heaviside_cross(b.mu1, n11, b.nu12);
    case Activation::Sine: return sine_cross(b.mu1, n11, b.nu12);
  }
  return 0.0;
}

double relu_mean_via_gelu(const UniMoment& u, double lambda) {
  return activation_mean(Activation::Gelu,
                         {lambda * u.mu, lambda * lambda * u.nu}) /
         lambda;
}

double stochastic_activation_variance(const UniMoment& u) {
  const double nu = std::max(u.nu, 0.0);
  return 8.0 * owens_t(u.mu / std::sqrt(1.0 + nu),
                       1.0 / std::sqrt(1.0 + 2.0 * nu));
}

}  // namespace momentflow
