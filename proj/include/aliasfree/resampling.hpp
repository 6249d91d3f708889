#pragma once

#include "aliasfree/filter_design.hpp"
#include "aliasfree/image.hpp"

namespace aliasfree {

enum class PaddingMode {
  Reflect,  ///< mirror without repeating the edge sample: -1 -> 1
  Zero,
};

/// out[n1, n2] = sum_{i,j} h[i, j] * x[n1 - i, n2 - j], per channel, same shape
/// as the input.
Image convolve2d(const Image& img, const Kernel2D& kernel, PaddingMode padding = PaddingMode::Reflect);

/// Max over non-overlapping 2x2 blocks. H and W must be even.
Image downsample2x_naive(const Image& img);

/// Align-corners bilinear 2x upsampling. H and W must be at least 2.
Image upsample2x_naive(const Image& img);

/// Low-pass filter, then keep even rows and columns.
Image downsample2x_af(const Image& img, const Kernel2D& kernel, PaddingMode padding = PaddingMode::Reflect);

/// Interleave zeros (originals on even indices), low-pass filter, gain 4.
Image upsample2x_af(const Image& img, const Kernel2D& kernel, PaddingMode padding = PaddingMode::Reflect);

}  // namespace aliasfree
