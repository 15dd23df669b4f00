#pragma once

#include "ipad/types.hpp"

#include <string_view>

namespace ipad {

// One inner iteration scheme plugged into the block-acceptance loop. A solver
// targets min h(u) + H(u, v) + (eta/2)||u - u_prev||^2 for a fixed v. reset()
// is called once per outer step before any step(); step() advances the
// scheme's own sequence by one iteration. Schemes with internal state (ADMM)
// may ignore the passed iterate.
class InnerSolver {
 public:
  virtual ~InnerSolver() = default;
  virtual void reset(const Matrix& u_prev, const Matrix& v_other, double eta) = 0;
  virtual Matrix step(const Matrix& u) = 0;
  virtual std::string_view name() const = 0;
};

// Generic forward-backward scheme: u <- prox_h(u - grad_smooth(u)/L, L) where
// grad_smooth is the gradient of H(., v) + (eta/2)||. - u_prev||^2. Used for
// the quadratic test problems and by exact-step baselines.
class ForwardBackwardSolver final : public InnerSolver {
 public:
  ForwardBackwardSolver(std::function<Matrix(const Matrix&, const Matrix&)> grad_H_u,
                        std::function<Matrix(const Matrix&, double)> prox_h,
                        double lipschitz_H, double step_scale = 1.01)
      : grad_H_u_(std::move(grad_H_u)),
        prox_h_(std::move(prox_h)),
        lipschitz_H_(lipschitz_H),
        step_scale_(step_scale) {}

  void reset(const Matrix& u_prev, const Matrix& v_other, double eta) override {
    u_prev_ = u_prev;
    v_other_ = v_other;
    eta_ = eta;
    weight_ = step_scale_ * (lipschitz_H_ + eta);
  }

  Matrix step(const Matrix& u) override {
    Matrix grad = grad_H_u_(u, v_other_) + eta_ * (u - u_prev_);
    return prox_h_(u - grad / weight_, weight_);
  }

  std::string_view name() const override { return "forward-backward"; }

 private:
  std::function<Matrix(const Matrix&, const Matrix&)> grad_H_u_;
  std::function<Matrix(const Matrix&, double)> prox_h_;
  double lipschitz_H_;
  double step_scale_;
  Matrix u_prev_, v_other_;
  double eta_ = 0.0;
  double weight_ = 1.0;
};

}  // namespace ipad
