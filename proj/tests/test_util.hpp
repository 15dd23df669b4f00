#pragma once

#include "ipad/image.hpp"
#include "ipad/rng.hpp"
#include "ipad/types.hpp"

#include <cmath>
#include <optional>

namespace testutil {

inline ipad::Matrix random_matrix(long rows, long cols, ipad::Rng& rng,
                                  double scale = 1.0) {
  ipad::Matrix m(rows, cols);
  for (long j = 0; j < cols; ++j) {
    for (long i = 0; i < rows; ++i) m(i, j) = scale * rng.next_normal();
  }
  return m;
}

// Independent candidate-enumeration oracle for the scalar hard-threshold
// prox: compare the cost of the clamped candidate against zero, ties to zero.
inline double prox_hard_oracle(double v, double tau, double lambda,
                               std::optional<double> box) {
  double c = v;
  if (box) c = std::min(std::max(v, -*box), *box);
  const double keep = lambda + 0.5 * tau * (c - v) * (c - v);
  const double zero = 0.5 * tau * v * v;
  if (keep < zero) return c;
  return 0.0;
}

// Smooth two-block quadratic test problem:
//   f(x) = (alpha/2)||x - a||^2, g(y) = (beta/2)||y - b||^2,
//   H(x, y) = 0.5*||x - y||^2
// with closed-form proxes; strongly convex, unique minimizer.
struct QuadraticProblem {
  double alpha = 2.0;
  double beta = 3.0;
  ipad::Matrix a;
  ipad::Matrix b;

  QuadraticProblem(long rows, long cols, std::uint64_t seed) {
    ipad::Rng rng(seed);
    a = random_matrix(rows, cols, rng);
    b = random_matrix(rows, cols, rng);
  }

  ipad::NnpProblem as_nnp() const {
    ipad::NnpProblem p;
    const double alpha_ = alpha;
    const double beta_ = beta;
    const ipad::Matrix a_ = a;
    const ipad::Matrix b_ = b;
    p.f_value = [alpha_, a_](const ipad::Matrix& x) {
      return 0.5 * alpha_ * (x - a_).squaredNorm();
    };
    p.g_value = [beta_, b_](const ipad::Matrix& y) {
      return 0.5 * beta_ * (y - b_).squaredNorm();
    };
    p.H_value = [](const ipad::Matrix& x, const ipad::Matrix& y) {
      return 0.5 * (x - y).squaredNorm();
    };
    p.grad_H_x = [](const ipad::Matrix& x, const ipad::Matrix& y) {
      return ipad::Matrix(x - y);
    };
    p.grad_H_y = [](const ipad::Matrix& x, const ipad::Matrix& y) {
      return ipad::Matrix(y - x);
    };
    p.prox_f = [alpha_, a_](const ipad::Matrix& v, double tau) {
      return ipad::Matrix((tau * v + alpha_ * a_) / (alpha_ + tau));
    };
    p.prox_g = [beta_, b_](const ipad::Matrix& v, double tau) {
      return ipad::Matrix((tau * v + beta_ * b_) / (beta_ + tau));
    };
    p.smooth_subgrad_f = [alpha_, a_](const ipad::Matrix& x) {
      return ipad::Matrix(alpha_ * (x - a_));
    };
    p.smooth_subgrad_g = [beta_, b_](const ipad::Matrix& y) {
      return ipad::Matrix(beta_ * (y - b_));
    };
    return p;
  }
};

// 8-bit test scene with edges and strong oriented textures (stripes, weave,
// a disc, a dark box over a ramp); enough patch-level structure for
// dictionary learning.
inline ipad::GrayImage make_test_image(long width, long height) {
  ipad::GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(static_cast<std::size_t>(width * height));
  const double cx = 0.30 * double(width);
  const double cy = 0.30 * double(height);
  const double radius = 0.17 * double(std::min(width, height));
  for (long r = 0; r < height; ++r) {
    for (long c = 0; c < width; ++c) {
      const double x = double(c), y = double(r);
      double v = 70.0 + 0.45 * x + 0.20 * y;
      const double dx = x - cx, dy = y - cy;
      if (dx * dx + dy * dy < radius * radius) {
        v += 75.0;
      } else {
        // concentric rings around the disc, curvature everywhere
        v += 18.0 * std::sin(0.55 * std::sqrt(dx * dx + dy * dy));
      }
      if (y > 0.08 * double(height) && y < 0.42 * double(height) &&
          x > 0.55 * double(width)) {
        v += 55.0 * std::sin(1.05 * (x + 1.3 * y));  // diagonal stripes
      }
      if (y >= 0.42 * double(height) && x > 0.52 * double(width)) {
        // two interleaved oblique waves
        v += 30.0 * std::sin(0.9 * (1.7 * x - y)) +
             25.0 * std::sin(0.6 * (x + 2.4 * y));
      }
      if (y > 0.58 * double(height) && y < 0.92 * double(height) &&
          x > 0.06 * double(width) && x < 0.46 * double(width)) {
        v -= 60.0;
        v += 35.0 * std::sin(0.35 * (y + 0.8 * x) + 0.013 * x * y);  // warped
      }
      const long q = std::lround(v);
      img.pixels[static_cast<std::size_t>(r * width + c)] =
          static_cast<std::uint8_t>(std::clamp(q, 0L, 255L));
    }
  }
  return img;
}

}  // namespace testutil
