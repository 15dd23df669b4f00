#include "ipad/sdl_solvers.hpp"

#include "ipad/prox.hpp"
#include "ipad/spectral.hpp"

#include <cmath>
#include <limits>

namespace ipad {

// --- PITH --------------------------------------------------------------------

void PithSolver::reset(const Matrix& u_prev, const Matrix& v_other, double eta) {
  w_prev_ = u_prev;
  d_ = v_other;
  eta_ = eta;
  gram_ = d_.transpose() * d_;
  cross_ = inst_->data.transpose() * d_;
  const SpectralEstimate est = spectral_norm_estimate(gram_, 1e-8);
  if (!std::isfinite(est.value)) {
    throw numeric_error("spectral-norm estimate failed in PITH reset");
  }
  weight_ = cfg_.step_scale * (est.value + eta_);
}

Matrix PithSolver::step(const Matrix& w) {
  Matrix grad = w * gram_ - cross_ + eta_ * (w - w_prev_);
  return prox_hard_threshold(w - grad / weight_, weight_, inst_->lambda,
                             inst_->box);
}

double PithSolver::subproblem_value(const Matrix& w) const {
  if (!codes_feasible(w, inst_->box)) {
    return std::numeric_limits<double>::infinity();
  }
  const double data_term =
      0.5 * (inst_->data - d_ * w.transpose()).squaredNorm();
  const double prox_term = 0.5 * eta_ * (w - w_prev_).squaredNorm();
  return inst_->lambda * double(count_nonzeros(w)) + data_term + prox_term;
}

// --- prox-linear dictionary step ----------------------------------------------

void DictProxLinearSolver::reset(const Matrix& u_prev, const Matrix& v_other,
                                 double eta) {
  d_prev_ = u_prev;
  eta_ = eta;
  gram_ = v_other.transpose() * v_other;
  cross_ = inst_->data * v_other;
  weight_ = step_scale_ * (spectral_norm(gram_, 1e-8) + eta_);
  if (!(weight_ > 0.0)) {
    throw numeric_error("prox-linear step weight must be positive");
  }
}

Matrix DictProxLinearSolver::step(const Matrix& d) {
  Matrix grad = d * gram_ - cross_ + eta_ * (d - d_prev_);
  return project_unit_columns(d - grad / weight_);
}

// --- ADMM dictionary solve ----------------------------------------------------

void AdmmDictSolver::reset(const Matrix& u_prev, const Matrix& v_other,
                           double eta) {
  d_prev_ = u_prev;
  w_ = v_other;
  eta_ = eta;
  Matrix gram = w_.transpose() * w_;
  cross_ = inst_->data * w_;
  // default penalty at the curvature bound of the smooth part; smaller values
  // oscillate on the sphere-constrained subproblem
  rho_ = cfg_.rho > 0.0 ? cfg_.rho
                        : std::max(spectral_norm(gram, 1e-8) + eta_, 1e-3);
  gram.diagonal().array() += eta_ + rho_;
  llt_.compute(gram);
  if (llt_.info() != Eigen::Success) {
    throw numeric_error("ADMM factorization of W^T W + (eta+rho) Id failed");
  }
  if (!warm_ || z_.rows() != u_prev.rows() || z_.cols() != u_prev.cols()) {
    z_ = project_unit_columns(u_prev);
    u_ = Matrix::Zero(u_prev.rows(), u_prev.cols());
    warm_ = true;
  }
  d_ = z_;
}

Matrix AdmmDictSolver::step(const Matrix& /*ignored*/) {
  const Matrix rhs = cross_ + eta_ * d_prev_ + rho_ * (z_ - u_);
  d_ = llt_.solve(rhs.transpose()).transpose();
  const double alpha = cfg_.relaxation;
  const Matrix d_relaxed = alpha == 1.0 ? d_ : Matrix(alpha * d_ + (1.0 - alpha) * z_);
  z_ = project_unit_columns(d_relaxed + u_);
  u_ += d_relaxed - z_;
  return z_;
}

// --- columnwise PALM sweep ------------------------------------------------------

Eigen::VectorXd columnwise_lipschitz(const Matrix& w) {
  return w.colwise().squaredNorm().transpose();
}

void MpalmDictSolver::reset(const Matrix& u_prev, const Matrix& v_other,
                            double eta) {
  d_prev_ = u_prev;
  w_ = v_other;
  eta_ = eta;
  lipschitz_ = columnwise_lipschitz(w_);
}

Matrix MpalmDictSolver::step(const Matrix& d) {
  Matrix out = d;
  Matrix residual = inst_->data - out * w_.transpose();
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double weight = step_scale_ * (lipschitz_[j] + eta_);
    Eigen::VectorXd grad =
        -residual * w_.col(j) + eta_ * (out.col(j) - d_prev_.col(j));
    Eigen::VectorXd candidate = out.col(j) - grad / weight;
    const double norm = candidate.norm();
    if (norm > 0.0) {
      candidate /= norm;
    } else {
      candidate.setZero();
      candidate[0] = 1.0;
    }
    residual += (out.col(j) - candidate) * w_.col(j).transpose();
    out.col(j) = candidate;
  }
  return out;
}

// --- INV dictionary update -----------------------------------------------------

void InvDictSolver::reset(const Matrix& u_prev, const Matrix& v_other,
                          double eta) {
  Matrix gram = v_other.transpose() * v_other;
  gram.diagonal().array() += eta;
  llt_.compute(gram);
  if (llt_.info() != Eigen::Success) {
    throw numeric_error("INV factorization of W^T W + eta Id failed");
  }
  rhs_ = inst_->data * v_other + eta * u_prev;
}

Matrix InvDictSolver::step(const Matrix& /*d*/) {
  Matrix solved = llt_.solve(rhs_.transpose()).transpose();
  return project_unit_columns(solved);
}

// --- diagnostics ---------------------------------------------------------------

double dict_subproblem_kkt_residual(const SdlInstance& inst, const Matrix& z,
                                    const Matrix& w, const Matrix& d_prev,
                                    double eta) {
  Matrix grad = (z * w.transpose() - inst.data) * w + eta * (z - d_prev);
  double sq = 0.0;
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    Eigen::VectorXd g = grad.col(j);
    g -= z.col(j).dot(g) * z.col(j);  // remove the radial component
    sq += g.squaredNorm();
  }
  return std::sqrt(sq);
}

}  // namespace ipad
