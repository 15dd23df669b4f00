#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ipad/solver.hpp"
#include "test_util.hpp"

#include <Eigen/Cholesky>

#include <cmath>

using ipad::BlockOracles;
using ipad::BlockPoint;
using ipad::IpadConfig;
using ipad::IterationRecord;
using ipad::Matrix;
using ipad::Schedule;
using ipad::StopMode;

namespace {

Matrix scalar(double v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return m;
}

// inner scheme emitting a scripted sequence of scalars
class ScriptedSolver final : public ipad::InnerSolver {
 public:
  explicit ScriptedSolver(std::vector<double> values)
      : values_(std::move(values)) {}
  void reset(const Matrix&, const Matrix&, double) override { next_ = 0; }
  Matrix step(const Matrix& u) override {
    if (next_ < values_.size()) return scalar(values_[next_++]);
    return u;
  }
  std::string_view name() const override { return "scripted"; }

 private:
  std::vector<double> values_;
  std::size_t next_ = 0;
};

}  // namespace

TEST_CASE("config validation enforces eta > 2C") {
  IpadConfig cfg = IpadConfig::defaults(1.0);
  CHECK_NOTHROW(cfg.validate());
  cfg.eta1 = Schedule(2.0);  // violates eta > 2*C_x = 2
  CHECK_THROWS_AS(cfg.validate(), ipad::config_error);
  cfg.eta1 = Schedule({3.0, 1.9}, 3.0);  // bad value inside the schedule
  CHECK_THROWS_AS(cfg.validate(), ipad::config_error);
}

TEST_CASE("evaluate_inexactness reproduces the one-dimensional hand example") {
  // h == 0 (prox identity), H = u^2/2, eta = 3, u_prev = 0, u_raw = 1
  BlockOracles oracles;
  oracles.grad_H_u = [](const Matrix& u) { return u; };
  oracles.prox_h = [](const Matrix& v, double) { return v; };
  const auto ix = ipad::evaluate_inexactness(scalar(1.0), scalar(0.0), oracles, 3.0);
  CHECK(ix.u_tilde(0, 0) == doctest::Approx(-3.0));
  CHECK(ix.e(0, 0) == doctest::Approx(12.0));
}

TEST_CASE("a prox fixed point yields zero error") {
  BlockOracles oracles;
  oracles.grad_H_u = [](const Matrix& u) { return Matrix(Matrix::Zero(u.rows(), u.cols())); };
  oracles.prox_h = [](const Matrix& v, double) { return v; };
  const auto ix = ipad::evaluate_inexactness(scalar(0.7), scalar(0.7), oracles, 2.5);
  CHECK(ix.u_tilde(0, 0) == 0.7);
  CHECK(ix.e.norm() == 0.0);
}

TEST_CASE("non-finite oracle values are reported by name") {
  BlockOracles oracles;
  oracles.grad_H_u = [](const Matrix& u) {
    return Matrix(u.array() * std::numeric_limits<double>::quiet_NaN());
  };
  oracles.prox_h = [](const Matrix& v, double) { return v; };
  CHECK_THROWS_WITH_AS(
      ipad::evaluate_inexactness(scalar(1.0), scalar(0.0), oracles, 3.0),
      "non-finite values from grad_H at raw iterate", ipad::numeric_error);
}

TEST_CASE("smooth-regularizer error equals the negated optimality residual") {
  // h quadratic: prox_h(v, tau) = (A + tau I)^{-1} (tau v - b), grad_h = A u + b
  ipad::Rng rng(21);
  const long dim = 6;
  Matrix a_half = testutil::random_matrix(dim, dim, rng);
  const Matrix a = Matrix(a_half.transpose() * a_half / double(dim)) +
                   0.5 * Matrix::Identity(dim, dim);
  const Matrix b = testutil::random_matrix(dim, 1, rng);
  const Matrix mix = testutil::random_matrix(dim, dim, rng);

  for (int rep = 0; rep < 100; ++rep) {
    const double eta = 2.2 + 2.0 * rng.next_double();
    const Matrix v_other = testutil::random_matrix(dim, 1, rng);
    const Matrix u_prev = testutil::random_matrix(dim, 1, rng);
    const Matrix u_raw = testutil::random_matrix(dim, 1, rng);

    BlockOracles oracles;
    oracles.grad_H_u = [&](const Matrix& u) {
      return Matrix(u - mix * v_other);
    };
    oracles.prox_h = [&](const Matrix& v, double tau) {
      const Matrix lhs = a + tau * Matrix::Identity(dim, dim);
      return Matrix(lhs.ldlt().solve(tau * v - b));
    };

    const auto ix = ipad::evaluate_inexactness(u_raw, u_prev, oracles, eta);
    // first-order residual at the corrected candidate
    const Matrix residual = a * ix.u_tilde + b +
                            oracles.grad_H_u(ix.u_tilde) +
                            eta * (ix.u_tilde - u_prev);
    const double scale = std::max(1.0, ix.e.cwiseAbs().maxCoeff());
    CHECK(((ix.e + residual).cwiseAbs().maxCoeff()) <= 1e-10 * scale);
    CHECK(std::abs(ix.e.norm() - residual.norm()) <=
          1e-12 * std::max(1.0, ix.e.norm()));
  }
}

TEST_CASE("accepted candidates satisfy the prox drift identity") {
  // prox applied to (drift at the accepted point + signed error) returns the
  // accepted point itself
  ipad::Rng rng(22);
  BlockOracles oracles;
  oracles.grad_H_u = [](const Matrix& u) { return Matrix(0.8 * u); };
  oracles.prox_h = [](const Matrix& v, double tau) {
    return ipad::Matrix(v.unaryExpr([tau](double x) {
      return std::abs(x) * std::abs(x) * tau > 2.0 * 0.3 ? x : 0.0;
    }));
  };
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix u_prev = testutil::random_matrix(5, 2, rng);
    const Matrix u_raw = testutil::random_matrix(5, 2, rng);
    const double eta = 2.5;
    const auto ix = ipad::evaluate_inexactness(u_raw, u_prev, oracles, eta);
    const Matrix drift_at_tilde = ix.u_tilde - oracles.grad_H_u(ix.u_tilde) -
                                  eta * (ix.u_tilde - u_prev);
    const Matrix back = oracles.prox_h(drift_at_tilde - ix.e, 1.0);
    CHECK((back - ix.u_tilde).cwiseAbs().maxCoeff() <=
          1e-10 * (1.0 + ix.u_tilde.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("accept_block takes the first candidate within the criterion") {
  // gamma + eta = 0.5 makes ||e|| / ||u_tilde - u_prev|| = 0.5 identically
  BlockOracles oracles;
  oracles.grad_H_u = [](const Matrix& u) { return Matrix(-2.5 * u); };
  oracles.prox_h = [](const Matrix& v, double) { return v; };
  ScriptedSolver inner({0.2});
  inner.reset(scalar(0.0), scalar(0.0), 3.0);
  const auto acc =
      ipad::accept_block(scalar(0.0), oracles, 3.0, 1.0, 1e-12, inner, 20);
  CHECK(acc.criterion_met);
  CHECK(acc.inner_count == 1);
  CHECK(acc.u_accepted(0, 0) == doctest::Approx(0.1));
  CHECK(acc.e_norm == doctest::Approx(0.05));
}

TEST_CASE("accept_block keeps iterating while the criterion fails") {
  // gamma + eta = 2 makes the ratio 2 > C = 1 for every candidate
  BlockOracles oracles;
  oracles.grad_H_u = [](const Matrix& u) { return Matrix(-1.0 * u); };
  oracles.prox_h = [](const Matrix& v, double) { return v; };
  ScriptedSolver inner({0.1, 0.08, 0.06});
  inner.reset(scalar(0.0), scalar(0.0), 3.0);
  const auto acc =
      ipad::accept_block(scalar(0.0), oracles, 3.0, 1.0, 1e-12, inner, 3);
  CHECK_FALSE(acc.criterion_met);
  CHECK(acc.inner_count == 3);
  CHECK(acc.best_ratio == doctest::Approx(2.0));
}

TEST_CASE("stagnation at the previous point is accepted immediately") {
  BlockOracles oracles;
  oracles.grad_H_u = [](const Matrix& u) { return Matrix(Matrix::Zero(u.rows(), u.cols())); };
  oracles.prox_h = [](const Matrix& v, double) { return v; };
  ScriptedSolver inner({0.7});
  inner.reset(scalar(0.7), scalar(0.0), 3.0);
  const auto acc =
      ipad::accept_block(scalar(0.7), oracles, 3.0, 1.0, 1e-12, inner, 20);
  CHECK(acc.criterion_met);
  CHECK(acc.inner_count == 1);
  CHECK(acc.e_norm == 0.0);
  CHECK(acc.u_accepted(0, 0) == 0.7);
}

TEST_CASE("descent constants match the direct formula evaluations") {
  IpadConfig cfg = IpadConfig::defaults(1.0);
  cfg.eta1 = Schedule(4.0);
  cfg.eta2 = Schedule(4.0);
  const auto c0 = ipad::descent_constants(cfg, 0.0);
  CHECK(c0.a == doctest::Approx(0.75));
  const auto c2 = ipad::descent_constants(cfg, 2.0);
  CHECK(c2.b == doctest::Approx(7.0));

  IpadConfig exact = IpadConfig::defaults(0.0);
  exact.eta1 = Schedule(2.0);
  exact.eta2 = Schedule(2.0);
  CHECK(ipad::descent_constants(exact, 0.0).a == doctest::Approx(0.5));
}

TEST_CASE("stop rule boundary policy and modes") {
  CHECK(ipad::check_stop(5e-5, 5e-5, 5e-5, StopMode::synthetic, 1e-4));
  CHECK(ipad::check_stop(1.0, 5e-3, 1.0, StopMode::real, 1e-2));
  CHECK_FALSE(ipad::check_stop(1e-4, 0.0, 0.0, StopMode::synthetic, 1e-4));
  CHECK_FALSE(ipad::check_stop(0.0, 1e-2, 0.0, StopMode::real, 1e-2));
  // guarded denominators
  CHECK(ipad::relative_change(0.0, 0.0) == 0.0);
  CHECK(std::isinf(ipad::relative_change(1.0, 0.0)));
}

TEST_CASE("audit flags injected descent violations") {
  std::vector<IterationRecord> trace(3);
  trace[0].t = 0;
  trace[0].psi = 10.0;
  trace[1].t = 1;
  trace[1].psi = 9.0;
  trace[1].dx_norm = 1.0;
  trace[1].dy_norm = 1.0;
  trace[2].t = 2;
  trace[2].psi = 8.9;  // drop of 0.1 < a*(0.5^2+0.5^2) = 0.25
  trace[2].dx_norm = 0.5;
  trace[2].dy_norm = 0.5;
  const auto audit = ipad::audit_descent(trace, 0.5, 1e-8);
  CHECK(audit.violations == 1);
  CHECK(audit.first_violation_t == 2);
  CHECK(audit.worst_margin < 0.0);

  const auto clean = ipad::audit_descent(trace, 0.05, 1e-8);
  CHECK(clean.violations == 0);
}

TEST_CASE("criterion recheck flags inflated errors") {
  std::vector<IterationRecord> trace(2);
  trace[0].t = 0;
  trace[1].t = 1;
  trace[1].dx_norm = 0.1;
  trace[1].ex_norm = 0.25;  // exceeds C*dx = 0.1
  trace[1].dy_norm = 0.1;
  trace[1].ey_norm = 0.05;
  CHECK(ipad::criterion_violations(trace, 1.0, 1.0, 1e-12) == 1);
  CHECK(ipad::criterion_violations(trace, 3.0, 1.0, 1e-12) == 0);
}

namespace {

struct PadReference {
  // closed-form alternating minimizers of the quadratic test problem
  static BlockPoint run(const testutil::QuadraticProblem& qp, double eta1,
                        double eta2, double tol, long max_outer) {
    Matrix x = Matrix::Zero(qp.a.rows(), qp.a.cols());
    Matrix y = x;
    const ipad::NnpProblem p = qp.as_nnp();
    double psi_prev = p.psi(x, y);
    for (long t = 1; t <= max_outer; ++t) {
      const Matrix x_prev = x;
      const Matrix y_prev = y;
      x = (qp.alpha * qp.a + y + eta1 * x) / (qp.alpha + 1.0 + eta1);
      y = (qp.beta * qp.b + x + eta2 * y) / (qp.beta + 1.0 + eta2);
      const double psi = p.psi(x, y);
      const double rel_x =
          ipad::relative_change((x - x_prev).norm(), x_prev.norm());
      const double rel_y =
          ipad::relative_change((y - y_prev).norm(), y_prev.norm());
      const double rel_psi =
          ipad::relative_change(std::abs(psi - psi_prev), std::abs(psi_prev));
      psi_prev = psi;
      if (ipad::check_stop(rel_x, rel_y, rel_psi, StopMode::synthetic, tol)) break;
    }
    return {x, y};
  }
};

}  // namespace

TEST_CASE("inexact solve matches the exact-PAD reference on quadratics") {
  const testutil::QuadraticProblem qp(3, 2, 5);
  const ipad::NnpProblem problem = qp.as_nnp();

  IpadConfig cfg = IpadConfig::defaults(1.0);
  cfg.outer_tol = 1e-9;
  cfg.max_outer = 3000;
  cfg.max_inner = 50;

  // Lipschitz of grad H(., v) is 1 for both blocks
  ipad::ForwardBackwardSolver inner_x(problem.grad_H_x, problem.prox_f, 1.0);
  ipad::ForwardBackwardSolver inner_y(
      [&problem](const Matrix& y, const Matrix& x) {
        return problem.grad_H_y(x, y);
      },
      problem.prox_g, 1.0);

  BlockPoint init{Matrix::Zero(3, 2), Matrix::Zero(3, 2)};
  const auto result = ipad::solve_ipad(problem, cfg, inner_x, inner_y, init);
  CHECK(result.termination == ipad::Termination::converged);

  const BlockPoint exact =
      PadReference::run(qp, cfg.eta1.at(1), cfg.eta2.at(1), 1e-9, 3000);
  CHECK((result.final.x - exact.x).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK((result.final.y - exact.y).cwiseAbs().maxCoeff() <= 1e-6);

  // accepted runs satisfy the criterion and the sufficient-descent bound
  CHECK(ipad::criterion_violations(result.trace, cfg.c_x, cfg.c_y,
                                   cfg.abs_error_floor) == 0);
  const auto constants = ipad::descent_constants(cfg, 1.0);
  CHECK(ipad::audit_descent(result.trace, constants.a, 1e-8).violations == 0);
}

TEST_CASE("a joint prox fixed point with H == 0 terminates in one step") {
  ipad::NnpProblem p;
  p.f_value = [](const Matrix& x) { return 0.1 * x.squaredNorm(); };
  p.g_value = [](const Matrix& y) { return 0.1 * y.squaredNorm(); };
  p.H_value = [](const Matrix&, const Matrix&) { return 0.0; };
  p.grad_H_x = [](const Matrix& x, const Matrix&) {
    return Matrix(Matrix::Zero(x.rows(), x.cols()));
  };
  p.grad_H_y = [](const Matrix&, const Matrix& y) {
    return Matrix(Matrix::Zero(y.rows(), y.cols()));
  };
  // prox of 0.1||.||^2 with weight tau: tau v / (0.2 + tau); fixed point at 0
  p.prox_f = [](const Matrix& v, double tau) {
    return Matrix(tau * v / (0.2 + tau));
  };
  p.prox_g = p.prox_f;

  IpadConfig cfg = IpadConfig::defaults(1.0);
  ipad::ForwardBackwardSolver ix(p.grad_H_x, p.prox_f, 0.0);
  ipad::ForwardBackwardSolver iy(
      [&p](const Matrix& y, const Matrix& x) { return p.grad_H_y(x, y); },
      p.prox_g, 0.0);
  BlockPoint init{Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
  const auto result = ipad::solve_ipad(p, cfg, ix, iy, init);
  CHECK(result.termination == ipad::Termination::converged);
  CHECK(result.trace.back().t == 1);
  CHECK(result.trace.back().dx_norm == 0.0);
  CHECK(result.trace.back().dy_norm == 0.0);
}

TEST_CASE("solver rejects a non-finite initial objective") {
  ipad::NnpProblem p;
  p.f_value = [](const Matrix&) {
    return std::numeric_limits<double>::infinity();
  };
  p.g_value = [](const Matrix&) { return 0.0; };
  p.H_value = [](const Matrix&, const Matrix&) { return 0.0; };
  p.grad_H_x = [](const Matrix& x, const Matrix&) { return x; };
  p.grad_H_y = [](const Matrix&, const Matrix& y) { return y; };
  p.prox_f = [](const Matrix& v, double) { return v; };
  p.prox_g = p.prox_f;
  IpadConfig cfg = IpadConfig::defaults(1.0);
  ipad::ForwardBackwardSolver ix(p.grad_H_x, p.prox_f, 0.0);
  ipad::ForwardBackwardSolver iy(
      [&p](const Matrix& y, const Matrix& x) { return p.grad_H_y(x, y); },
      p.prox_g, 0.0);
  BlockPoint init{scalar(1.0), scalar(1.0)};
  CHECK_THROWS_AS(ipad::solve_ipad(p, cfg, ix, iy, init), ipad::config_error);
}

TEST_CASE("identical configurations produce identical traces") {
  const testutil::QuadraticProblem qp(4, 3, 9);
  const ipad::NnpProblem problem = qp.as_nnp();
  IpadConfig cfg = IpadConfig::defaults(1.0);
  cfg.outer_tol = 1e-7;

  auto run_once = [&] {
    ipad::ForwardBackwardSolver ix(problem.grad_H_x, problem.prox_f, 1.0);
    ipad::ForwardBackwardSolver iy(
        [&problem](const Matrix& y, const Matrix& x) {
          return problem.grad_H_y(x, y);
        },
        problem.prox_g, 1.0);
    BlockPoint init{Matrix::Zero(4, 3), Matrix::Zero(4, 3)};
    return ipad::solve_ipad(problem, cfg, ix, iy, init);
  };

  const auto r1 = run_once();
  const auto r2 = run_once();
  REQUIRE(r1.trace.size() == r2.trace.size());
  for (std::size_t i = 0; i < r1.trace.size(); ++i) {
    CHECK(r1.trace[i].psi == r2.trace[i].psi);
    CHECK(r1.trace[i].dx_norm == r2.trace[i].dx_norm);
    CHECK(r1.trace[i].dy_norm == r2.trace[i].dy_norm);
    CHECK(r1.trace[i].ex_norm == r2.trace[i].ex_norm);
    CHECK(r1.trace[i].ey_norm == r2.trace[i].ey_norm);
    CHECK(r1.trace[i].inner_x == r2.trace[i].inner_x);
    CHECK(r1.trace[i].inner_y == r2.trace[i].inner_y);
  }
  CHECK((r1.final.x - r2.final.x).norm() == 0.0);
}

TEST_CASE("criterion failure within max_inner stalls the solve") {
  // the scripted scheme keeps the ratio at 2 > C forever
  ipad::NnpProblem p;
  p.f_value = [](const Matrix&) { return 0.0; };
  p.g_value = [](const Matrix&) { return 0.0; };
  p.H_value = [](const Matrix& x, const Matrix& y) {
    return -0.5 * (x.squaredNorm() + y.squaredNorm());
  };
  p.grad_H_x = [](const Matrix& x, const Matrix&) { return Matrix(-x); };
  p.grad_H_y = [](const Matrix&, const Matrix& y) { return Matrix(-y); };
  p.prox_f = [](const Matrix& v, double) { return v; };
  p.prox_g = p.prox_f;

  IpadConfig cfg = IpadConfig::defaults(1.0);
  cfg.max_inner = 3;
  ScriptedSolver sx({0.1, 0.1, 0.1});
  ScriptedSolver sy({0.1, 0.1, 0.1});
  BlockPoint init{scalar(0.0), scalar(0.0)};
  const auto result = ipad::run_outer_loop(
      p, cfg,
      {ipad::BlockPolicy::Kind::criterion, &sx, cfg.max_inner},
      {ipad::BlockPolicy::Kind::criterion, &sy, cfg.max_inner}, init);
  CHECK(result.termination == ipad::Termination::stalled);
  CHECK(result.trace.back().t == 1);
}
