#pragma once

#include "ipad/sdl.hpp"

#include <cstdint>

namespace ipad {

struct SyntheticSpec {
  long n = 64;
  long m = 600;
  long p = 4000;
  long k = 5;                // nonzeros per code row
  double noise_sigma = 0.01;
  double lambda = 0.1;
  std::uint64_t seed = 0;
};

struct SyntheticInstance {
  SdlInstance instance;
  Matrix d_true;  // n x m, unit columns
  Matrix w_true;  // p x m, exactly k nonzeros per row
};

// I = D* W*^T + sigma * noise; pure function of the spec (seed included).
SyntheticInstance gen_synthetic(const SyntheticSpec& spec);

// Random unit-column dictionary used as the synthetic initial point.
Matrix random_unit_dictionary(long n, long m, std::uint64_t seed);

}  // namespace ipad
