#pragma once

#include "ipad/image.hpp"
#include "ipad/types.hpp"

namespace ipad {

inline constexpr long kPatchSize = 8;

// Regular overlapping grid of 8x8 patches. The stride must divide both spans
// so that the grid covers the image exactly.
struct PatchGrid {
  long image_width = 0;
  long image_height = 0;
  long stride = 1;
  long cols = 0;  // patches per row of the grid
  long rows = 0;

  long count() const { return rows * cols; }
};

PatchGrid make_patch_grid(long width, long height, long stride);

// Patches as rows of a (count x 64) matrix, each flattened row-major.
Matrix extract_patches(const GrayImage& img, long stride);

// Average overlapping contributions per pixel, round, clamp to [0, 255].
GrayImage reconstruct(const Matrix& patches, const PatchGrid& grid);

}  // namespace ipad
