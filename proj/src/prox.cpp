#include "ipad/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ipad {

double prox_hard_threshold(double v, double tau, double lambda,
                           std::optional<double> box) {
  if (!(tau > 0.0)) throw config_error("prox weight tau must be positive");
  double c = v;
  if (box) c = std::clamp(v, -*box, *box);
  const double keep_cost = lambda + 0.5 * tau * (c - v) * (c - v);
  const double zero_cost = 0.5 * tau * v * v;
  return keep_cost < zero_cost ? c : 0.0;
}

Matrix prox_hard_threshold(const Matrix& v, double tau, double lambda,
                           std::optional<double> box) {
  if (!(tau > 0.0)) throw config_error("prox weight tau must be positive");
  Matrix out(v.rows(), v.cols());
  const double* src = v.data();
  double* dst = out.data();
  const Eigen::Index size = v.size();
  if (box) {
    const double b = *box;
    for (Eigen::Index i = 0; i < size; ++i) {
      const double x = src[i];
      const double c = std::clamp(x, -b, b);
      const double keep = lambda + 0.5 * tau * (c - x) * (c - x);
      dst[i] = keep < 0.5 * tau * x * x ? c : 0.0;
    }
  } else {
    for (Eigen::Index i = 0; i < size; ++i) {
      const double x = src[i];
      dst[i] = lambda < 0.5 * tau * x * x ? x : 0.0;
    }
  }
  return out;
}

Matrix project_unit_columns(const Matrix& d) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  Matrix out = d;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const double n = out.col(j).norm();
    if (n == 0.0) {
      out.col(j).setZero();
      out(0, j) = 1.0;
    } else if (std::abs(n - 1.0) > 4.0 * eps) {  // keeps projection idempotent
      out.col(j) /= n;
    }
  }
  return out;
}

}  // namespace ipad
