#include "ipad/spectral.hpp"

#include <cmath>

namespace ipad {

SpectralEstimate spectral_norm_estimate(const Matrix& a, double tol,
                                        long max_iter) {
  if (a.size() == 0) throw config_error("spectral_norm: empty matrix");

  // iterate on the smaller Gram matrix A^T A or A A^T
  const bool use_cols = a.cols() <= a.rows();
  const Eigen::Index dim = use_cols ? a.cols() : a.rows();

  Eigen::VectorXd v = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(double(dim)));
  double lambda = 0.0;
  SpectralEstimate out;
  out.converged = false;
  for (long it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = use_cols ? Eigen::VectorXd(a.transpose() * (a * v))
                                 : Eigen::VectorXd(a * (a.transpose() * v));
    const double norm = w.norm();
    if (norm == 0.0) {
      out.value = 0.0;
      out.converged = true;
      return out;
    }
    const double lambda_new = v.dot(w);
    v = w / norm;
    if (it > 0 && std::abs(lambda_new - lambda) <=
                      0.25 * tol * std::max(lambda_new, 0.0)) {
      lambda = lambda_new;
      out.converged = true;
      break;
    }
    lambda = lambda_new;
  }
  out.value = std::sqrt(std::max(lambda, 0.0));
  return out;
}

double spectral_norm(const Matrix& a, double tol) {
  return spectral_norm_estimate(a, tol).value;
}

}  // namespace ipad
