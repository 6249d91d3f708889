#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "aliasfree/filter_design.hpp"
#include "aliasfree/image.hpp"
#include "aliasfree/resampling.hpp"

namespace aliasfree {

enum class Activation { ReLU, GeLU };

std::string to_string(Activation act);
std::optional<Activation> parse_activation(std::string_view name);

double relu(double v);
/// Exact v * Phi(v), not the tanh approximation.
double gelu(double v);

Image apply_pointwise(const Image& img, Activation act);

/// 2x alias-free upsample, nonlinearity at the higher rate, 2x alias-free
/// downsample. The same kernel serves both legs.
Image wrapped_activation(const Image& img, Activation act, const Kernel2D& kernel,
                         PaddingMode padding = PaddingMode::Reflect);

}  // namespace aliasfree
