#pragma once

#include "ipad/inner_solver.hpp"
#include "ipad/sdl.hpp"

#include <Eigen/Cholesky>

namespace ipad {

struct PithConfig {
  double step_scale = 1.01;  // multiplier on the quadratic Lipschitz bound
  long max_steps = 20;
};

struct AdmmConfig {
  double rho = 0.0;  // <= 0 selects the curvature-scale default ||W^T W||_2 + eta
  double relaxation = 1.0;  // over-relaxation in (0, 2)
  long max_steps = 20;
};

// Proximal iterative hard-thresholding on the code subproblem
//   min S(W) + 0.5*||I - D W^T||^2 + (eta/2)*||W - W_prev||^2
// with step weight L = step_scale * (||D^T D||_2 + eta).
class PithSolver final : public InnerSolver {
 public:
  PithSolver(const SdlInstance& inst, PithConfig cfg = {})
      : inst_(&inst), cfg_(cfg) {
    if (cfg_.step_scale < 1.0) {
      throw config_error("PITH step_scale must be at least 1");
    }
  }

  void reset(const Matrix& u_prev, const Matrix& v_other, double eta) override;
  Matrix step(const Matrix& w) override;
  std::string_view name() const override { return "pith"; }

  double step_weight() const { return weight_; }
  // subproblem objective, for majorization checks
  double subproblem_value(const Matrix& w) const;

 private:
  const SdlInstance* inst_;
  PithConfig cfg_;
  Matrix d_;           // fixed dictionary
  Matrix gram_;        // D^T D
  Matrix cross_;       // I^T D
  Matrix w_prev_;
  double eta_ = 0.0;
  double weight_ = 1.0;
};

// One forward-backward sweep on the dictionary subproblem with the unit-column
// projection as prox; the exact-step scheme used by PALM-style presets.
class DictProxLinearSolver final : public InnerSolver {
 public:
  DictProxLinearSolver(const SdlInstance& inst, double step_scale = 1.01)
      : inst_(&inst), step_scale_(step_scale) {}

  void reset(const Matrix& u_prev, const Matrix& v_other, double eta) override;
  Matrix step(const Matrix& d) override;
  std::string_view name() const override { return "prox-linear"; }

  double step_weight() const { return weight_; }

 private:
  const SdlInstance* inst_;
  double step_scale_;
  Matrix gram_;   // W^T W
  Matrix cross_;  // I W
  Matrix d_prev_;
  double eta_ = 0.0;
  double weight_ = 1.0;
};

// ADMM on the dictionary subproblem with splitting D = Z and the unit-column
// indicator carried by Z. The factorization of W^T W + (eta+rho)*Id is
// computed once per outer step; (Z, U) warm-start across outer steps. The
// candidate handed to the acceptance loop is Z, feasible by construction.
class AdmmDictSolver final : public InnerSolver {
 public:
  AdmmDictSolver(const SdlInstance& inst, AdmmConfig cfg = {})
      : inst_(&inst), cfg_(cfg) {}

  void reset(const Matrix& u_prev, const Matrix& v_other, double eta) override;
  Matrix step(const Matrix& ignored) override;
  std::string_view name() const override { return "admm"; }

  const Matrix& current_d() const { return d_; }
  const Matrix& current_z() const { return z_; }
  const Matrix& current_u() const { return u_; }
  double rho() const { return rho_; }
  double primal_residual() const { return (d_ - z_).norm(); }

 private:
  const SdlInstance* inst_;
  AdmmConfig cfg_;
  Matrix w_;       // fixed codes
  Matrix cross_;   // I W
  Matrix d_prev_;
  Matrix d_, z_, u_;
  Eigen::LLT<Matrix> llt_;
  double eta_ = 0.0;
  double rho_ = 0.0;
  bool warm_ = false;
};

// Atom-by-atom prox-linear sweep in ascending column order, each atom with
// its scalar Lipschitz constant ||w_i||^2, then normalized.
class MpalmDictSolver final : public InnerSolver {
 public:
  MpalmDictSolver(const SdlInstance& inst, double step_scale = 1.01)
      : inst_(&inst), step_scale_(step_scale) {}

  void reset(const Matrix& u_prev, const Matrix& v_other, double eta) override;
  Matrix step(const Matrix& d) override;
  std::string_view name() const override { return "columnwise-palm"; }

  const Eigen::VectorXd& atom_lipschitz() const { return lipschitz_; }

 private:
  const SdlInstance* inst_;
  double step_scale_;
  Matrix w_;
  Matrix d_prev_;
  Eigen::VectorXd lipschitz_;  // ||w_i||^2 per atom
  double eta_ = 0.0;
};

// Dictionary update of the INV baseline: solve
//   D (W^T W + eta*Id) = I W + eta*D_prev
// then project onto unit columns. No inexactness accounting.
class InvDictSolver final : public InnerSolver {
 public:
  explicit InvDictSolver(const SdlInstance& inst) : inst_(&inst) {}

  void reset(const Matrix& u_prev, const Matrix& v_other, double eta) override;
  Matrix step(const Matrix& d) override;
  std::string_view name() const override { return "linear-system+project"; }

 private:
  const SdlInstance* inst_;
  Matrix rhs_;  // I W + eta*D_prev
  Eigen::LLT<Matrix> llt_;
};

// Per-atom Lipschitz constants ||w_i||^2 used by the columnwise sweep.
Eigen::VectorXd columnwise_lipschitz(const Matrix& w);

// Projected stationarity residual of the dictionary subproblem at a feasible
// point z: the tangential part of the subproblem gradient, column by column.
double dict_subproblem_kkt_residual(const SdlInstance& inst, const Matrix& z,
                                    const Matrix& w, const Matrix& d_prev,
                                    double eta);

}  // namespace ipad
