#include "momentflow/gaussian.hpp"

#include <cmath>
#include <limits>

#include "momentflow/special_functions.hpp"

namespace momentflow {

namespace {
constexpr double kEigFloor = -1e-10;  // relative to the largest eigenvalue
}

void symmetrize(Eigen::MatrixXd& s) {
  s = 0.5 * (s + s.transpose()).eval();
}

Eigen::MatrixXd psd_repair(const Eigen::MatrixXd& cov) {
  Eigen::MatrixXd s = cov;
  symmetrize(s);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  Eigen::MatrixXd out =
      es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
  symmetrize(out);
  return out;
}

Gaussian::Gaussian(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (cov_.rows() != cov_.cols() || cov_.rows() != mean_.size()) {
    throw std::invalid_argument("Gaussian: mean/cov dimensions disagree");
  }
  symmetrize(cov_);
  if (cov_.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        cov_, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (lo < kEigFloor * std::max(hi, 0.0)) {
      cov_ = psd_repair(cov_);
    }
  }
}

Gaussian Gaussian::standard(Eigen::Index dim) {
  return Gaussian(Eigen::VectorXd::Zero(dim),
                  Eigen::MatrixXd::Identity(dim, dim));
}

LinearMap::LinearMap(Eigen::MatrixXd m, Eigen::VectorXd b)
    : matrix(std::move(m)), offset(std::move(b)) {
  if (matrix.rows() != offset.size()) {
    throw std::invalid_argument("LinearMap: matrix rows != offset length");
  }
}

Gaussian affine_pushforward(const Gaussian& g, const LinearMap& map) {
  if (map.matrix.cols() != g.dim()) {
    throw std::invalid_argument("affine_pushforward: dimension mismatch");
  }
  Eigen::VectorXd mean = map.matrix * g.mean() + map.offset;
  Eigen::MatrixXd cov = map.matrix * g.cov() * map.matrix.transpose();
  symmetrize(cov);
  return Gaussian(std::move(mean), std::move(cov));
}

Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& cov) {
  const Eigen::Index n = cov.rows();
  const double scale = n > 0 ? cov.trace() / static_cast<double>(n) : 0.0;
  double jitter = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::MatrixXd candidate = cov;
    if (jitter > 0.0) {
      candidate.diagonal().array() += jitter;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(candidate);
    if (llt.info() == Eigen::Success) {
      return llt.matrixL();
    }
    jitter = jitter == 0.0 ? 1e-12 * scale : 10.0 * jitter;
    if (jitter > 1e-6 * scale || jitter == 0.0) break;
  }
  throw numerical_error("jittered_cholesky: covariance not positive definite "
                        "after maximum jitter");
}

namespace {

// Log-determinant of a PSD matrix via LDLT; -inf if any pivot is <= 0.
double psd_log_det(const Eigen::MatrixXd& s) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(s);
  if (ldlt.info() != Eigen::Success) {
    return -std::numeric_limits<double>::infinity();
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const double d = ldlt.vectorD()(i);
    if (d <= 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(d);
  }
  return acc;
}

}  // namespace

double kl_divergence(const Gaussian& p, const Gaussian& q) {
  if (p.dim() != q.dim()) {
    throw std::invalid_argument("kl_divergence: dimension mismatch");
  }
  const Eigen::Index n = p.dim();

  // The q side must be invertible; walk the jitter ladder on failure.
  const double scale = n > 0 ? q.cov().trace() / static_cast<double>(n) : 0.0;
  double jitter = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::MatrixXd qcov = q.cov();
    if (jitter > 0.0) qcov.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(qcov);
    if (llt.info() == Eigen::Success) {
      const Eigen::VectorXd diff = q.mean() - p.mean();
      const double quad = llt.solve(diff).dot(diff);
      const double tr = llt.solve(p.cov()).trace();
      double logdet_q = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        logdet_q += 2.0 * std::log(llt.matrixL()(i, i));
      }
      const double logdet_p = psd_log_det(p.cov());
      if (std::isinf(logdet_p)) {
        return std::numeric_limits<double>::infinity();
      }
      const double kl =
          0.5 * (tr + quad - static_cast<double>(n) + logdet_q - logdet_p);
      return std::max(kl, 0.0);
    }
    jitter = jitter == 0.0 ? 1e-12 * scale : 10.0 * jitter;
    if (jitter > 1e-6 * scale || jitter == 0.0) break;
  }
  throw numerical_error("kl_divergence: reference covariance singular after "
                        "maximum jitter");
}

GaussianSampler::GaussianSampler(const Gaussian& g)
    : mean_(g.mean()), chol_(jittered_cholesky(g.cov())) {}

Eigen::VectorXd GaussianSampler::operator()(const Eigen::VectorXd& u) const {
  if (u.size() != mean_.size()) {
    throw std::invalid_argument("GaussianSampler: point dimension mismatch");
  }
  Eigen::VectorXd z(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    z(i) = norm_quantile(u(i));
  }
  return mean_ + chol_ * z;
}

Eigen::MatrixXd GaussianSampler::map_batch(const Eigen::MatrixXd& u) const {
  if (u.rows() != mean_.size()) {
    throw std::invalid_argument("GaussianSampler: batch dimension mismatch");
  }
  Eigen::MatrixXd z(u.rows(), u.cols());
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      z(i, j) = norm_quantile(u(i, j));
    }
  }
  return (chol_ * z).colwise() + mean_;
}

Eigen::VectorXd sample(const Gaussian& g, const Eigen::VectorXd& u) {
  return GaussianSampler(g)(u);
}

}  // namespace momentflow
