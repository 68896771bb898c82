#include "momentflow/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "momentflow/propagation.hpp"

namespace momentflow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Extrema found by grid+refinement over [-10, 10]; regenerate with
// scripts/regen_constants.py.
constexpr double kProbitD1Sup = 0.7978845608028653559;     // 2 phi(0)
constexpr double kProbitD2Sup = 0.4839414490382866996;     // 2 phi(1)
constexpr double kGeluD1Sup = 1.128904145185154786;        // at x = sqrt 2
constexpr double kGeluD2Sup = 0.7978845608028653559;       // 2 phi(0)
}  // namespace

double derivative_sup(Activation kind) {
  switch (kind) {
    case Activation::Probit: return kProbitD1Sup;
    case Activation::Gelu: return kGeluD1Sup;
    case Activation::Relu: return 1.0;
    case Activation::Heaviside: return kInf;
    case Activation::Sine: return 1.0;
  }
  return kInf;
}

double second_derivative_sup(Activation kind) {
  switch (kind) {
    case Activation::Probit: return kProbitD2Sup;
    case Activation::Gelu: return kGeluD2Sup;
    case Activation::Relu: return kInf;
    case Activation::Heaviside: return kInf;
    case Activation::Sine: return 1.0;
  }
  return kInf;
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::MatrixXd gram = m.transpose() * m;
  const Eigen::Index n = gram.rows();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(double(n));
  double lambda = 0.0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd w = gram * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    w /= norm;
    const double next = w.dot(gram * w);
    const bool converged = std::abs(next - lambda) <= 1e-8 * std::abs(next);
    lambda = next;
    v = std::move(w);
    if (converged && it > 0) break;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

double lipschitz_bound(const LayerParams& layer) {
  const double norm_c = spectral_norm(layer.c);
  const double norm_a = spectral_norm(layer.a);
  if (norm_a == 0.0) return norm_c;  // no activation path
  return derivative_sup(layer.kind) * norm_a + norm_c;
}

double nonnormality_bound(const LayerParams& layer, const Gaussian& incoming,
                          const Gaussian& outgoing) {
  Eigen::MatrixXd sandwich =
      layer.a * incoming.cov() * layer.a.transpose();
  symmetrize(sandwich);
  const double nu_norm = spectral_norm(sandwich);
  if (nu_norm == 0.0) return 0.0;  // activation input is deterministic

  const double d1 = derivative_sup(layer.kind);
  const double d2 = second_derivative_sup(layer.kind);
  if (std::isinf(d1) || std::isinf(d2)) return kInf;

  // ||Sigma_out^-1|| = 1 / lambda_min; a singular output covariance flags
  // the bound infinite rather than erroring.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(outgoing.cov(),
                                                    Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0) return kInf;

  const auto dim = static_cast<double>(layer.output_dim());
  return 3.0 / std::sqrt(2.0) * std::sqrt(dim) * d2 * d1 * (1.0 / lo) *
         std::sqrt(hi) * std::pow(nu_norm, 1.5);
}

std::vector<LayerBound> error_recursion(const Network& net,
                                        const Gaussian& input) {
  const std::vector<Gaussian> states = propagate_analytic(net, input);
  std::vector<LayerBound> out;
  out.reserve(net.depth());
  double cumulative = 0.0;
  const Gaussian* incoming = &input;
  for (std::size_t k = 0; k < net.depth(); ++k) {
    LayerBound bound;
    bound.lipschitz = lipschitz_bound(net.layers()[k]);
    bound.nonnormality =
        nonnormality_bound(net.layers()[k], *incoming, states[k]);
    cumulative = bound.lipschitz * cumulative + bound.nonnormality;
    bound.cumulative = cumulative;
    out.push_back(bound);
    incoming = &states[k];
  }
  return out;
}

}  // namespace momentflow
