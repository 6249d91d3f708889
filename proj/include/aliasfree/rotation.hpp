#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "aliasfree/image.hpp"

namespace aliasfree {

enum class FillMode {
  ReplicateEdge,  ///< clamp sample coordinates to the image
  Zero,
};

std::string to_string(FillMode fill);
std::optional<FillMode> parse_fill_mode(std::string_view name);

struct RotationParams {
  double angle = 0.0;  ///< radians, counter-clockwise as displayed (row 0 on top)
  FillMode fill = FillMode::ReplicateEdge;
};

/// Rotates every channel about ((H-1)/2, (W-1)/2) by inverse mapping with
/// bilinear sampling.
Image rotate(const Image& img, const RotationParams& params);

}  // namespace aliasfree
