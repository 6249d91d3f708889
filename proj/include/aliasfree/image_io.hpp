#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "aliasfree/image.hpp"

namespace aliasfree {

enum class RasterFormat {
  PGM_P5,  ///< 1 channel, 8 bit
  PPM_P6,  ///< 3 channels, 8 bit
};

/// Parses binary P5/P6 with maxval 255 ('#' comments allowed between header
/// fields). Bytes map to [-1, 1] by v / 127.5 - 1. Throws ParseError.
Image read_raster(std::span<const std::uint8_t> bytes);

/// Clamp to [-1, 1], then byte = floor((v + 1) * 127.5 + 0.5). Header is
/// "P5\n<W> <H>\n255\n" (P6 likewise).
std::vector<std::uint8_t> write_raster(const Image& img, RasterFormat format);

/// P5 for one channel, P6 for three; ShapeError otherwise.
RasterFormat raster_format_for(const Image& img);

Image read_raster_file(const std::filesystem::path& path);
void write_raster_file(const std::filesystem::path& path, const Image& img);

}  // namespace aliasfree
