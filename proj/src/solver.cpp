#include "ipad/solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace ipad {

namespace {

bool all_finite(const Matrix& m) { return m.allFinite(); }

void require_finite(const Matrix& m, const char* what) {
  if (!all_finite(m)) {
    throw numeric_error(std::string("non-finite values from ") + what);
  }
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

void IpadConfig::validate() const {
  if (!(c_x >= 0.0) || !(c_y >= 0.0)) {
    throw config_error("error constants C_x, C_y must be nonnegative");
  }
  if (max_outer < 1 || max_inner < 1) {
    throw config_error("max_outer and max_inner must be at least 1");
  }
  if (!(outer_tol > 0.0)) throw config_error("outer_tol must be positive");
  if (abs_error_floor < 0.0) {
    throw config_error("abs_error_floor must be nonnegative");
  }
  for (long t = 1; t <= max_outer; ++t) {
    if (!(eta1.at(t) > 2.0 * c_x)) {
      throw config_error("eta1 schedule violates eta > 2*C_x at step " +
                         std::to_string(t));
    }
    if (!(eta2.at(t) > 2.0 * c_y)) {
      throw config_error("eta2 schedule violates eta > 2*C_y at step " +
                         std::to_string(t));
    }
  }
}

Inexactness evaluate_inexactness(const Matrix& u_raw, const Matrix& u_prev,
                                 const BlockOracles& oracles, double eta) {
  require_finite(u_raw, "inner solver iterate");
  Matrix grad_raw = oracles.grad_H_u(u_raw);
  require_finite(grad_raw, "grad_H at raw iterate");

  Matrix drift = u_raw - grad_raw - eta * (u_raw - u_prev);
  Matrix u_tilde = oracles.prox_h(drift, 1.0);
  require_finite(u_tilde, "prox of block regularizer");

  Matrix grad_tilde = oracles.grad_H_u(u_tilde);
  require_finite(grad_tilde, "grad_H at corrected candidate");

  Inexactness out;
  out.e = (1.0 - eta) * (u_tilde - u_raw) + grad_raw - grad_tilde;
  out.u_tilde = std::move(u_tilde);
  return out;
}

BlockAcceptance accept_block(const Matrix& u_prev, const BlockOracles& oracles,
                             double eta, double c_u, double abs_floor,
                             InnerSolver& inner, long max_inner) {
  const double floor = abs_floor * (1.0 + u_prev.norm());
  BlockAcceptance best;
  best.best_ratio = std::numeric_limits<double>::infinity();

  Matrix u = u_prev;
  for (long i = 1; i <= max_inner; ++i) {
    u = inner.step(u);
    Inexactness ix = evaluate_inexactness(u, u_prev, oracles, eta);
    const double e_norm = ix.e.norm();
    const double delta = (ix.u_tilde - u_prev).norm();
    if (e_norm <= c_u * delta + floor) {
      BlockAcceptance acc;
      acc.u_accepted = std::move(ix.u_tilde);
      acc.inner_count = i;
      acc.e_norm = e_norm;
      acc.criterion_met = true;
      acc.best_ratio = e_norm / std::max(delta, floor);
      return acc;
    }
    const double ratio =
        e_norm / std::max(delta, std::max(floor, std::numeric_limits<double>::min()));
    if (ratio < best.best_ratio) {
      best.u_accepted = std::move(ix.u_tilde);
      best.e_norm = e_norm;
      best.best_ratio = ratio;
    }
    best.inner_count = i;
  }
  best.criterion_met = false;
  return best;
}

double relative_change(double num, double den) {
  if (den > 0.0) return num / den;
  return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

bool check_stop(double rel_x, double rel_y, double rel_psi, StopMode mode,
                double tol) {
  if (mode == StopMode::real) return rel_y < tol;
  return std::max({rel_x, rel_y, rel_psi}) < tol;
}

bool check_stop(const IterationRecord& current, StopMode mode, double tol) {
  return check_stop(current.dx_rel, current.dy_rel, current.dpsi_rel, mode, tol);
}

DescentConstants descent_constants(const IpadConfig& config, double lipschitz_M) {
  DescentConstants out;
  out.a = std::numeric_limits<double>::infinity();
  out.b = 0.0;
  for (long t = 1; t <= config.max_outer; ++t) {
    const double e1 = config.eta1.at(t);
    const double e2 = config.eta2.at(t);
    out.a = std::min(out.a, std::min(e1 / 4.0 - config.c_x * config.c_x / e1,
                                     e2 / 4.0 - config.c_y * config.c_y / e2));
    out.b = std::max(out.b, std::max(e1 + config.c_x,
                                     lipschitz_M + e2 + config.c_y));
  }
  return out;
}

DescentAudit audit_descent(const std::vector<IterationRecord>& trace, double a,
                           double rel_tol) {
  DescentAudit audit;
  audit.worst_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < trace.size(); ++i) {
    const IterationRecord& prev = trace[i - 1];
    const IterationRecord& cur = trace[i];
    const double required = a * (cur.dx_norm * cur.dx_norm +
                                 cur.dy_norm * cur.dy_norm) -
                            rel_tol * (1.0 + std::abs(prev.psi));
    const double margin = (prev.psi - cur.psi) - required;
    if (margin < audit.worst_margin) audit.worst_margin = margin;
    if (margin < 0.0) {
      ++audit.violations;
      if (audit.first_violation_t < 0) audit.first_violation_t = cur.t;
    }
  }
  if (trace.size() < 2) audit.worst_margin = 0.0;
  return audit;
}

long criterion_violations(const std::vector<IterationRecord>& trace, double c_x,
                          double c_y, double abs_floor) {
  long count = 0;
  for (const IterationRecord& r : trace) {
    if (r.t == 0) continue;
    if (r.ex_norm > c_x * r.dx_norm + abs_floor * (1.0 + r.x_prev_norm)) ++count;
    if (r.ey_norm > c_y * r.dy_norm + abs_floor * (1.0 + r.y_prev_norm)) ++count;
  }
  return count;
}

namespace {

struct BlockOutcome {
  Matrix u;
  long inner = 0;
  double e_norm = 0.0;
  bool ok = true;
};

BlockOutcome advance_block(const BlockPolicy& policy, const Matrix& u_prev,
                           const Matrix& v_other, const BlockOracles& oracles,
                           double eta, double c_u, double abs_floor) {
  policy.solver->reset(u_prev, v_other, eta);
  BlockOutcome out;
  if (policy.kind == BlockPolicy::Kind::criterion) {
    BlockAcceptance acc = accept_block(u_prev, oracles, eta, c_u, abs_floor,
                                       *policy.solver, policy.step_budget);
    out.u = std::move(acc.u_accepted);
    out.inner = acc.inner_count;
    out.e_norm = acc.e_norm;
    out.ok = acc.criterion_met;
  } else {
    // Exact steps of the scheme's own update rule; no inexactness measured.
    Matrix u = u_prev;
    for (long i = 0; i < policy.step_budget; ++i) u = policy.solver->step(u);
    require_finite(u, "fixed-step inner scheme");
    out.u = std::move(u);
    out.inner = policy.step_budget;
  }
  return out;
}

}  // namespace

SolveResult run_outer_loop(const NnpProblem& problem, const IpadConfig& config,
                           const BlockPolicy& policy_x, const BlockPolicy& policy_y,
                           const BlockPoint& init) {
  config.validate();
  if (!all_finite(init.x) || !all_finite(init.y)) {
    throw config_error("initial point contains non-finite entries");
  }
  const double psi0 = problem.psi(init.x, init.y);
  if (!std::isfinite(psi0)) {
    throw config_error("objective is not finite at the initial point");
  }

  const auto t0 = std::chrono::steady_clock::now();
  SolveResult result;
  result.final = init;
  result.termination = Termination::max_outer;

  IterationRecord r0;
  r0.t = 0;
  r0.psi = psi0;
  result.trace.push_back(r0);

  Matrix x = init.x;
  Matrix y = init.y;
  double psi_prev = psi0;

  BlockOracles oracles_x;
  oracles_x.prox_h = problem.prox_f;
  BlockOracles oracles_y;
  oracles_y.prox_h = problem.prox_g;

  for (long t = 1; t <= config.max_outer; ++t) {
    const double eta1 = config.eta1.at(t);
    const double eta2 = config.eta2.at(t);
    const Matrix x_prev = x;
    const Matrix y_prev = y;

    if (problem.bind_grad_H_x) {
      oracles_x.grad_H_u = problem.bind_grad_H_x(y_prev);
    } else {
      oracles_x.grad_H_u = [&problem, &y_prev](const Matrix& u) {
        return problem.grad_H_x(u, y_prev);
      };
    }
    BlockOutcome bx = advance_block(policy_x, x_prev, y_prev, oracles_x, eta1,
                                    config.c_x, config.abs_error_floor);
    x = bx.u;

    if (problem.bind_grad_H_y) {
      oracles_y.grad_H_u = problem.bind_grad_H_y(x);
    } else {
      oracles_y.grad_H_u = [&problem, &x](const Matrix& u) {
        return problem.grad_H_y(x, u);
      };
    }
    BlockOutcome by = advance_block(policy_y, y_prev, x, oracles_y, eta2,
                                    config.c_y, config.abs_error_floor);
    y = by.u;

    const double psi = problem.psi(x, y);
    if (!std::isfinite(psi)) {
      throw numeric_error("objective became non-finite at outer step " +
                          std::to_string(t));
    }

    IterationRecord rec;
    rec.t = t;
    rec.psi = psi;
    rec.dx_norm = (x - x_prev).norm();
    rec.dy_norm = (y - y_prev).norm();
    rec.ex_norm = bx.e_norm;
    rec.ey_norm = by.e_norm;
    rec.inner_x = bx.inner;
    rec.inner_y = by.inner;
    rec.x_prev_norm = x_prev.norm();
    rec.y_prev_norm = y_prev.norm();
    rec.dx_rel = relative_change(rec.dx_norm, rec.x_prev_norm);
    rec.dy_rel = relative_change(rec.dy_norm, rec.y_prev_norm);
    rec.dpsi_rel = relative_change(std::abs(psi - psi_prev), std::abs(psi_prev));
    rec.elapsed_s = seconds_since(t0);
    result.trace.push_back(rec);
    psi_prev = psi;

    if (!bx.ok || !by.ok) {
      result.termination = Termination::stalled;
      break;
    }
    if (check_stop(rec, config.stop_mode, config.outer_tol)) {
      result.termination = Termination::converged;
      break;
    }
  }

  result.final.x = std::move(x);
  result.final.y = std::move(y);
  result.total_seconds = seconds_since(t0);
  return result;
}

SolveResult solve_ipad(const NnpProblem& problem, const IpadConfig& config,
                       InnerSolver& inner_x, InnerSolver& inner_y,
                       const BlockPoint& init) {
  BlockPolicy px;
  px.kind = BlockPolicy::Kind::criterion;
  px.solver = &inner_x;
  px.step_budget = config.max_inner;
  BlockPolicy py;
  py.kind = BlockPolicy::Kind::criterion;
  py.solver = &inner_y;
  py.step_budget = config.max_inner;
  return run_outer_loop(problem, config, px, py, init);
}

}  // namespace ipad
