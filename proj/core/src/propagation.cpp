#include "momentflow/propagation.hpp"

#include <cmath>

#include "momentflow/moments.hpp"
#include "momentflow/parallel.hpp"

namespace momentflow {

Gaussian layer_moment_match(const Gaussian& g, const LayerParams& layer) {
  if (layer.input_dim() != g.dim()) {
    throw std::invalid_argument("layer_moment_match: dimension mismatch");
  }
  const Eigen::Index m = layer.output_dim();

  const Eigen::VectorXd pre_mean = layer.a * g.mean() + layer.b;
  const Eigen::MatrixXd sigma_at = g.cov() * layer.a.transpose();
  Eigen::MatrixXd nu = layer.a * sigma_at;           // A Sigma A^T
  symmetrize(nu);
  const Eigen::MatrixXd kappa = layer.c * sigma_at;  // C Sigma A^T (= kappa^T)
  Eigen::MatrixXd tau = layer.c * g.cov() * layer.c.transpose();
  symmetrize(tau);

  Eigen::VectorXd mean = layer.c * g.mean() + layer.d;
  for (Eigen::Index i = 0; i < m; ++i) {
    mean(i) += activation_mean(layer.kind, {pre_mean(i), nu(i, i)});
  }

  Eigen::MatrixXd cov(m, m);
  const Activation kind = layer.kind;
  // Upper triangle only, mirrored below; rows are disjoint across workers.
  parallel_for(static_cast<std::size_t>(m), [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    for (Eigen::Index j = i; j < m; ++j) {
      double v = activation_cov(
          kind, {pre_mean(i), pre_mean(j), nu(i, i), nu(j, j), nu(i, j)});
      v += activation_cross_cov(kind,
                                {pre_mean(i), 0.0, nu(i, i), 0.0, kappa(j, i)});
      v += activation_cross_cov(kind,
                                {pre_mean(j), 0.0, nu(j, j), 0.0, kappa(i, j)});
      v += tau(i, j);
      cov(i, j) = v;
      cov(j, i) = v;
    }
  });

  return Gaussian(std::move(mean), std::move(cov));
}

std::vector<Gaussian> propagate_analytic(const Network& net,
                                         const Gaussian& input) {
  std::vector<Gaussian> out;
  out.reserve(net.depth());
  const Gaussian* current = &input;
  for (const auto& layer : net.layers()) {
    out.push_back(layer_moment_match(*current, layer));
    current = &out.back();
  }
  return out;
}

Gaussian propagate_mean_field(const Network& net, const Gaussian& input) {
  Gaussian current = input;
  for (const auto& layer : net.layers()) {
    Gaussian pushed = layer_moment_match(current, layer);
    Eigen::MatrixXd diag = pushed.cov().diagonal().asDiagonal();
    current = Gaussian(pushed.mean(), std::move(diag));
  }
  return current;
}

Gaussian propagate_linear(const Network& net, const Gaussian& input) {
  Eigen::VectorXd x = input.mean();
  Eigen::MatrixXd jac =
      Eigen::MatrixXd::Identity(input.dim(), input.dim());
  for (const auto& layer : net.layers()) {
    const Eigen::VectorXd pre = layer.a * x + layer.b;
    Eigen::VectorXd slope(pre.size());
    for (Eigen::Index i = 0; i < pre.size(); ++i) {
      slope(i) = activation_derivative(layer.kind, pre(i));
    }
    jac = (slope.asDiagonal() * layer.a + layer.c) * jac;
    x = eval(layer, x);
  }
  Eigen::MatrixXd cov = jac * input.cov() * jac.transpose();
  symmetrize(cov);
  return Gaussian(std::move(x), std::move(cov));
}

SigmaPointScheme SigmaPointScheme::u95(double kappa) {
  SigmaPointScheme s;
  s.variant = Variant::U95;
  s.kappa = kappa;
  return s;
}

SigmaPointScheme SigmaPointScheme::u02(double alpha, double beta,
                                       double kappa) {
  SigmaPointScheme s;
  s.variant = Variant::U02;
  s.alpha = alpha;
  s.beta = beta;
  s.kappa = kappa;
  return s;
}

Gaussian propagate_unscented(const Network& net, const Gaussian& input,
                             const SigmaPointScheme& scheme) {
  const Eigen::Index n = input.dim();
  const auto nd = static_cast<double>(n);

  double spread;       // sqrt(n + lambda) scaling of the Cholesky columns
  double w0_mean;
  double w0_cov;
  double wi;
  if (scheme.variant == SigmaPointScheme::Variant::U95) {
    const double denom = nd + scheme.kappa;
    spread = std::sqrt(denom);
    w0_mean = scheme.kappa / denom;
    w0_cov = w0_mean;
    wi = 0.5 / denom;
  } else {
    const double lambda =
        scheme.alpha * scheme.alpha * (nd + scheme.kappa) - nd;
    const double denom = nd + lambda;
    spread = std::sqrt(denom);
    w0_mean = lambda / denom;
    w0_cov = w0_mean + 1.0 - scheme.alpha * scheme.alpha + scheme.beta;
    wi = 0.5 / denom;
  }

  const Eigen::MatrixXd root = jittered_cholesky(input.cov()) * spread;

  const Eigen::Index count = 2 * n + 1;
  Eigen::MatrixXd points(n, count);
  points.col(0) = input.mean();
  for (Eigen::Index i = 0; i < n; ++i) {
    points.col(1 + 2 * i) = input.mean() + root.col(i);
    points.col(2 + 2 * i) = input.mean() - root.col(i);
  }

  Eigen::MatrixXd images(net.output_dim(), count);
  for (Eigen::Index i = 0; i < count; ++i) {
    images.col(i) = eval(net, Eigen::VectorXd(points.col(i)));
  }

  Eigen::VectorXd wm = Eigen::VectorXd::Constant(count, wi);
  wm(0) = w0_mean;
  Eigen::VectorXd mean = images * wm;

  Eigen::VectorXd wc = Eigen::VectorXd::Constant(count, wi);
  wc(0) = w0_cov;
  Eigen::MatrixXd centered = images.colwise() - mean;
  Eigen::MatrixXd cov = centered * wc.asDiagonal() * centered.transpose();
  symmetrize(cov);
  return Gaussian(std::move(mean), std::move(cov));
}

}  // namespace momentflow
