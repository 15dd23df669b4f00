#pragma once

#include "ipad/types.hpp"

#include <optional>

namespace ipad {

// The l0 sparse dictionary learning instance
//   min_{D,W} 0.5*||I - D W^T||^2 + lambda*||W||_0 + X_W(W) + X_D(D)
// with data I of shape n x p, dictionary D of n x m unit columns and code
// matrix W of shape p x m. The box on W is absent for synthetic data.
struct SdlInstance {
  Matrix data;  // n x p
  long n = 0;
  long m = 0;
  long p = 0;
  double lambda = 0.0;
  std::optional<double> box;  // ||w_i||_inf <= box when present

  SdlInstance() = default;
  SdlInstance(Matrix data_matrix, long atoms, double lambda_value,
              std::optional<double> box_bound = std::nullopt);
};

long count_nonzeros(const Matrix& w);

// +inf on infeasible (D, W), otherwise the data term plus the l0 penalty.
double sdl_objective(const SdlInstance& inst, const Matrix& d, const Matrix& w);

// Gradients of the smooth coupling H(W, D) = 0.5*||I - D W^T||^2.
Matrix grad_H_w(const SdlInstance& inst, const Matrix& d, const Matrix& w);
Matrix grad_H_d(const SdlInstance& inst, const Matrix& d, const Matrix& w);

// Feasibility of the block constraints (unit columns up to roundoff; box).
bool dictionary_feasible(const Matrix& d, double tol = 1e-8);
bool codes_feasible(const Matrix& w, const std::optional<double>& box);

// Oracle bundle with x = W (codes) and y = D (dictionary). The returned
// problem keeps a reference to the instance; it must outlive the bundle.
NnpProblem as_nnp(const SdlInstance& inst);

}  // namespace ipad
