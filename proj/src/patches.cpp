#include "ipad/patches.hpp"

#include <algorithm>
#include <cmath>

namespace ipad {

PatchGrid make_patch_grid(long width, long height, long stride) {
  if (width < kPatchSize || height < kPatchSize) {
    throw config_error("image smaller than the 8x8 patch size");
  }
  if (stride < 1) throw config_error("stride must be at least 1");
  if ((width - kPatchSize) % stride != 0 ||
      (height - kPatchSize) % stride != 0) {
    throw config_error("stride must divide both patch spans");
  }
  PatchGrid grid;
  grid.image_width = width;
  grid.image_height = height;
  grid.stride = stride;
  grid.cols = (width - kPatchSize) / stride + 1;
  grid.rows = (height - kPatchSize) / stride + 1;
  return grid;
}

Matrix extract_patches(const GrayImage& img, long stride) {
  const PatchGrid grid = make_patch_grid(img.width, img.height, stride);
  Matrix patches(grid.count(), kPatchSize * kPatchSize);
  long index = 0;
  for (long gr = 0; gr < grid.rows; ++gr) {
    for (long gc = 0; gc < grid.cols; ++gc) {
      const long r0 = gr * stride;
      const long c0 = gc * stride;
      for (long r = 0; r < kPatchSize; ++r) {
        for (long c = 0; c < kPatchSize; ++c) {
          patches(index, r * kPatchSize + c) = double(img.at(r0 + r, c0 + c));
        }
      }
      ++index;
    }
  }
  return patches;
}

GrayImage reconstruct(const Matrix& patches, const PatchGrid& grid) {
  if (patches.rows() != grid.count() ||
      patches.cols() != kPatchSize * kPatchSize) {
    throw config_error("patch matrix does not match the grid");
  }
  const std::size_t total =
      static_cast<std::size_t>(grid.image_width * grid.image_height);
  std::vector<double> sum(total, 0.0);
  std::vector<double> hits(total, 0.0);

  long index = 0;
  for (long gr = 0; gr < grid.rows; ++gr) {
    for (long gc = 0; gc < grid.cols; ++gc) {
      const long r0 = gr * grid.stride;
      const long c0 = gc * grid.stride;
      for (long r = 0; r < kPatchSize; ++r) {
        for (long c = 0; c < kPatchSize; ++c) {
          const std::size_t px = static_cast<std::size_t>(
              (r0 + r) * grid.image_width + (c0 + c));
          sum[px] += patches(index, r * kPatchSize + c);
          hits[px] += 1.0;
        }
      }
      ++index;
    }
  }

  GrayImage out;
  out.width = grid.image_width;
  out.height = grid.image_height;
  out.pixels.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    const double v = sum[i] / hits[i];
    out.pixels[i] =
        static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
  }
  return out;
}

}  // namespace ipad
