#include "ipad/sdl.hpp"

#include "ipad/prox.hpp"

#include <cmath>
#include <limits>
#include <memory>

namespace ipad {

namespace {

void require_shapes(const SdlInstance& inst, const Matrix& d, const Matrix& w) {
  if (d.rows() != inst.n || d.cols() != inst.m) {
    throw config_error("dictionary shape mismatch");
  }
  if (w.rows() != inst.p || w.cols() != inst.m) {
    throw config_error("code matrix shape mismatch");
  }
}

}  // namespace

SdlInstance::SdlInstance(Matrix data_matrix, long atoms, double lambda_value,
                         std::optional<double> box_bound)
    : data(std::move(data_matrix)),
      n(data.rows()),
      m(atoms),
      p(data.cols()),
      lambda(lambda_value),
      box(box_bound) {
  if (n < 1 || m < 1 || p < 1) throw config_error("SDL dims must be positive");
  if (lambda < 0.0) throw config_error("lambda must be nonnegative");
  if (box && !(*box > 0.0)) throw config_error("box bound must be positive");
}

long count_nonzeros(const Matrix& w) {
  long nnz = 0;
  const double* v = w.data();
  for (Eigen::Index i = 0; i < w.size(); ++i) nnz += v[i] != 0.0;
  return nnz;
}

bool dictionary_feasible(const Matrix& d, double tol) {
  for (Eigen::Index j = 0; j < d.cols(); ++j) {
    if (std::abs(d.col(j).norm() - 1.0) > tol) return false;
  }
  return true;
}

bool codes_feasible(const Matrix& w, const std::optional<double>& box) {
  if (!box) return true;
  return w.cwiseAbs().maxCoeff() <= *box;
}

double sdl_objective(const SdlInstance& inst, const Matrix& d, const Matrix& w) {
  require_shapes(inst, d, w);
  if (!dictionary_feasible(d) || !codes_feasible(w, inst.box)) {
    return std::numeric_limits<double>::infinity();
  }
  const double data_term = 0.5 * (inst.data - d * w.transpose()).squaredNorm();
  return data_term + inst.lambda * double(count_nonzeros(w));
}

Matrix grad_H_w(const SdlInstance& inst, const Matrix& d, const Matrix& w) {
  require_shapes(inst, d, w);
  return w * (d.transpose() * d) - inst.data.transpose() * d;
}

Matrix grad_H_d(const SdlInstance& inst, const Matrix& d, const Matrix& w) {
  require_shapes(inst, d, w);
  return (d * w.transpose() - inst.data) * w;
}

NnpProblem as_nnp(const SdlInstance& inst) {
  NnpProblem problem;
  const SdlInstance* p = &inst;
  problem.f_value = [p](const Matrix& w) {
    if (!codes_feasible(w, p->box)) {
      return std::numeric_limits<double>::infinity();
    }
    return p->lambda * double(count_nonzeros(w));
  };
  problem.g_value = [](const Matrix& d) {
    return dictionary_feasible(d) ? 0.0
                                  : std::numeric_limits<double>::infinity();
  };
  problem.H_value = [p](const Matrix& w, const Matrix& d) {
    return 0.5 * (p->data - d * w.transpose()).squaredNorm();
  };
  problem.grad_H_x = [p](const Matrix& w, const Matrix& d) {
    return grad_H_w(*p, d, w);
  };
  problem.grad_H_y = [p](const Matrix& w, const Matrix& d) {
    return grad_H_d(*p, d, w);
  };
  problem.prox_f = [p](const Matrix& v, double tau) {
    return prox_hard_threshold(v, tau, p->lambda, p->box);
  };
  problem.prox_g = [](const Matrix& v, double) {
    return project_unit_columns(v);
  };
  // Cached per-outer-step gradients: W*(D^T D) - I^T D and u*(W^T W) - I*W.
  problem.bind_grad_H_x = [p](const Matrix& d) {
    auto gram = std::make_shared<Matrix>(d.transpose() * d);
    auto cross = std::make_shared<Matrix>(p->data.transpose() * d);
    return [gram, cross](const Matrix& w) -> Matrix {
      return w * (*gram) - (*cross);
    };
  };
  problem.bind_grad_H_y = [p](const Matrix& w) {
    auto gram = std::make_shared<Matrix>(w.transpose() * w);
    auto cross = std::make_shared<Matrix>(p->data * w);
    return [gram, cross](const Matrix& d) -> Matrix {
      return d * (*gram) - (*cross);
    };
  };
  return problem;
}

}  // namespace ipad
