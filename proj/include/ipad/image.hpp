#pragma once

#include "ipad/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ipad {

struct GrayImage {
  long width = 0;
  long height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, width*height entries

  std::uint8_t at(long row, long col) const {
    return pixels[static_cast<std::size_t>(row * width + col)];
  }
};

// Binary PGM (P5, maxval 255) only. Distinct io_error messages for a wrong
// magic number, an unsupported maxval and a truncated payload.
GrayImage pgm_read(const std::string& path);
void pgm_write(const GrayImage& img, const std::string& path);

// Gaussian noise added in real arithmetic, then rounded and clamped.
GrayImage add_noise(const GrayImage& img, double sigma, std::uint64_t seed);

// 10*log10(255^2 / MSE), capped at 99 dB when the images are identical.
double psnr(const GrayImage& a, const GrayImage& b);

}  // namespace ipad
