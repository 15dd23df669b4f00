#pragma once

#include "ipad/inner_solver.hpp"
#include "ipad/types.hpp"

namespace ipad {

// Oracles of a single block subproblem, with the other block held fixed.
struct BlockOracles {
  std::function<Matrix(const Matrix&)> grad_H_u;         // gradient of H(., v)
  std::function<Matrix(const Matrix&, double)> prox_h;   // prox of the block regularizer
};

struct Inexactness {
  Matrix u_tilde;  // prox-corrected candidate
  Matrix e;        // implementable error at the candidate
};

// Computes the prox-corrected candidate and its implementable error:
//   v       = u_raw - grad_H_u(u_raw) - eta*(u_raw - u_prev)
//   u_tilde = prox_h(v, 1)
//   e       = (1 - eta)*(u_tilde - u_raw) + grad_H_u(u_raw) - grad_H_u(u_tilde)
// Throws numeric_error naming the offending oracle on non-finite values.
Inexactness evaluate_inexactness(const Matrix& u_raw, const Matrix& u_prev,
                                 const BlockOracles& oracles, double eta);

struct BlockAcceptance {
  Matrix u_accepted;
  long inner_count = 0;
  double e_norm = 0.0;
  bool criterion_met = false;
  double best_ratio = 0.0;  // smallest observed ||e|| / max(||delta||, floor)
};

// The inner-acceptance loop: repeatedly advances the inner scheme, computes
// the implementable error, and accepts the first prox-corrected candidate
// with ||e|| <= C_u*||u_tilde - u_prev|| + abs_floor*(1 + ||u_prev||).
// When max_inner is exhausted the candidate with the smallest error ratio is
// returned with criterion_met = false.
BlockAcceptance accept_block(const Matrix& u_prev, const BlockOracles& oracles,
                             double eta, double c_u, double abs_floor,
                             InnerSolver& inner, long max_inner);

// Relative change with guarded denominator: 0/0 -> 0, x/0 -> +inf.
double relative_change(double num, double den);

// Stop rule on two consecutive outer states, expressed through the relative
// changes already recorded. Synthetic mode watches all three ratios, real
// mode only the y-block (dictionary) change. Strict comparison.
bool check_stop(double rel_x, double rel_y, double rel_psi, StopMode mode,
                double tol);
bool check_stop(const IterationRecord& current, StopMode mode, double tol);

struct DescentConstants {
  double a = 0.0;
  double b = 0.0;
};

// Lemma-style constants over the configured schedules. M is a Lipschitz
// estimate for grad H on the iterate hull; diagnostics only.
DescentConstants descent_constants(const IpadConfig& config, double lipschitz_M);

struct DescentAudit {
  long violations = 0;
  double worst_margin = 0.0;  // most negative slack seen
  long first_violation_t = -1;
};

// Flags every step with psi_t - psi_{t+1} < a*(dx^2 + dy^2) - rel_tol*(1+|psi_t|).
DescentAudit audit_descent(const std::vector<IterationRecord>& trace, double a,
                           double rel_tol);

// Post-hoc re-check of the acceptance inequality on recorded steps.
long criterion_violations(const std::vector<IterationRecord>& trace, double c_x,
                          double c_y, double abs_floor);

// The outer loop with both blocks criterion-managed.
SolveResult solve_ipad(const NnpProblem& problem, const IpadConfig& config,
                       InnerSolver& inner_x, InnerSolver& inner_y,
                       const BlockPoint& init);

// --- shared outer-loop engine -----------------------------------------------
//
// Per-block policy: either the criterion-managed acceptance loop above, or a
// fixed number of scheme steps taken as-is (exact steps of their own update
// rule; recorded error is zero by construction).
struct BlockPolicy {
  enum class Kind { criterion, fixed_steps };
  Kind kind = Kind::criterion;
  InnerSolver* solver = nullptr;
  // criterion: cap on acceptance rounds; fixed_steps: exact step count
  long step_budget = 1;
};

SolveResult run_outer_loop(const NnpProblem& problem, const IpadConfig& config,
                           const BlockPolicy& policy_x, const BlockPolicy& policy_y,
                           const BlockPoint& init);

}  // namespace ipad
