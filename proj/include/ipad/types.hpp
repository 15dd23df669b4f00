#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipad {

using Matrix = Eigen::MatrixXd;

// Error categories surfaced through the C API as status codes.
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StopMode { synthetic, real };
enum class Termination { converged, max_outer, stalled };

// The pair of block iterates driven by the outer loop.
struct BlockPoint {
  Matrix x;
  Matrix y;
};

// Proximal-parameter schedule: constant, optionally overridden per outer step
// for a prefix of the iterations.
class Schedule {
 public:
  Schedule() = default;
  explicit Schedule(double constant) : constant_(constant) {}
  Schedule(std::vector<double> steps, double tail)
      : constant_(tail), steps_(std::move(steps)) {}

  // value used at outer step t (t >= 1)
  double at(long t) const {
    const std::size_t i = static_cast<std::size_t>(t - 1);
    return i < steps_.size() ? steps_[i] : constant_;
  }

  double min_value() const {
    double m = constant_;
    for (double s : steps_) m = std::min(m, s);
    return m;
  }
  double max_value() const {
    double m = constant_;
    for (double s : steps_) m = std::max(m, s);
    return m;
  }

 private:
  double constant_ = 0.0;
  std::vector<double> steps_;
};

struct IpadConfig {
  double c_x = 1.0;
  double c_y = 1.0;
  Schedule eta1;  // proximal weights of the x subproblem
  Schedule eta2;  // proximal weights of the y subproblem
  long max_outer = 500;
  long max_inner = 20;
  double outer_tol = 1e-4;
  StopMode stop_mode = StopMode::synthetic;
  double abs_error_floor = 1e-12;
  std::uint64_t seed = 0;

  // eta defaults keep a strict margin over the 2C lower bound.
  static double default_eta(double c) { return std::max(2.5 * c, 1e-3); }

  static IpadConfig defaults(double c = 1.0) {
    IpadConfig cfg;
    cfg.c_x = cfg.c_y = c;
    cfg.eta1 = Schedule(default_eta(c));
    cfg.eta2 = Schedule(default_eta(c));
    return cfg;
  }

  // Enforces eta1^t > 2*C_x and eta2^t > 2*C_y for every t.
  void validate() const;
};

// Per-outer-step telemetry. The relative changes and previous-iterate norms
// beyond the core fields feed the stop rule and post-hoc trace checks.
struct IterationRecord {
  long t = 0;
  double psi = 0.0;
  double dx_norm = 0.0;
  double dy_norm = 0.0;
  double ex_norm = 0.0;
  double ey_norm = 0.0;
  long inner_x = 0;
  long inner_y = 0;
  double elapsed_s = 0.0;  // cumulative wall time, not reproducible
  double dx_rel = 0.0;
  double dy_rel = 0.0;
  double dpsi_rel = 0.0;
  double x_prev_norm = 0.0;
  double y_prev_norm = 0.0;
};

struct SolveResult {
  BlockPoint final;
  std::vector<IterationRecord> trace;  // trace[0] is the t=0 snapshot
  Termination termination = Termination::max_outer;
  double total_seconds = 0.0;
};

// Oracle bundle for min f(x) + g(y) + H(x, y). All callables must be pure:
// the same inputs always produce the same outputs, and concurrent read-only
// use from independent solves is safe.
struct NnpProblem {
  std::function<double(const Matrix&)> f_value;
  std::function<double(const Matrix&)> g_value;
  std::function<double(const Matrix&, const Matrix&)> H_value;
  std::function<Matrix(const Matrix&, const Matrix&)> grad_H_x;
  std::function<Matrix(const Matrix&, const Matrix&)> grad_H_y;
  // prox(v, tau) returns a global minimizer of h(z) + (tau/2)||z - v||^2
  std::function<Matrix(const Matrix&, double)> prox_f;
  std::function<Matrix(const Matrix&, double)> prox_g;
  // present only when f (resp. g) is differentiable; test oracles
  std::function<Matrix(const Matrix&)> smooth_subgrad_f;
  std::function<Matrix(const Matrix&)> smooth_subgrad_g;
  // Optional binders: fix the other block once per outer step and return a
  // single-argument gradient that may reuse precomputed factors.
  std::function<std::function<Matrix(const Matrix&)>(const Matrix& y)> bind_grad_H_x;
  std::function<std::function<Matrix(const Matrix&)>(const Matrix& x)> bind_grad_H_y;

  double psi(const Matrix& x, const Matrix& y) const {
    return f_value(x) + g_value(y) + H_value(x, y);
  }
};

}  // namespace ipad
