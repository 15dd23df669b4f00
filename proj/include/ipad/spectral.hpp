#pragma once

#include "ipad/types.hpp"

namespace ipad {

struct SpectralEstimate {
  double value = 0.0;
  bool converged = true;
};

// Largest singular value by power iteration on the smaller Gram matrix,
// started from the normalized all-ones vector. The iteration cap returns the
// best estimate with converged = false.
SpectralEstimate spectral_norm_estimate(const Matrix& a, double tol = 1e-10,
                                        long max_iter = 10000);

double spectral_norm(const Matrix& a, double tol = 1e-10);

}  // namespace ipad
