#pragma once

#include "ipad/image.hpp"
#include "ipad/variants.hpp"

namespace ipad {

// Overcomplete DCT dictionary with unit columns; atoms must be a perfect
// square of a base of at least kPatchSize (256 -> 16x16 separable atoms).
Matrix overcomplete_dct_dictionary(long atoms);

// lambda tracking the reported (sigma, lambda) pairs of the denoising runs.
double default_denoise_lambda(double sigma);

inline constexpr double kDenoiseBoxBound = 10.0;

// spectral energy of the initial codes after instance normalization
inline constexpr double kTargetCoeffEnergy = 1.0;
// error-bound constant of the criterion-managed blocks at that energy
inline constexpr double kDenoiseErrorConstant = 0.1;

struct DenoiseParams {
  long stride = 4;
  long atoms = 256;
  double lambda = 0.0;  // <= 0 selects default_denoise_lambda(sigma)
  double sigma = 20.0;
  std::uint64_t noise_seed = 0;
  std::string_view variant = "ipad-admm";
};

struct DenoiseResult {
  GrayImage noisy;
  GrayImage recovered;
  double psnr_noisy = 0.0;
  double psnr_recovered = 0.0;
  double lambda = 0.0;  // resolved value
  SolveResult run;
};

// Learn a dictionary on mean-removed noisy patches with the requested variant
// (real-mode stop rule) and rebuild the image from D W^T plus the stored
// patch means.
DenoiseResult denoise_image(const GrayImage& clean, const DenoiseParams& params,
                            const SdlRunOptions& opts);

// Same pipeline, starting from an already-noisy image.
DenoiseResult denoise_noisy_image(const GrayImage& noisy,
                                  const DenoiseParams& params,
                                  const SdlRunOptions& opts);

}  // namespace ipad
