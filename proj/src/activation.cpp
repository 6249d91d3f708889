#include "aliasfree/activation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace aliasfree {

std::string to_string(Activation act) { return act == Activation::ReLU ? "relu" : "gelu"; }

std::optional<Activation> parse_activation(std::string_view name) {
  if (name == "relu" || name == "ReLU") return Activation::ReLU;
  if (name == "gelu" || name == "GeLU") return Activation::GeLU;
  return std::nullopt;
}

double relu(double v) { return std::max(0.0, v); }

double gelu(double v) { return 0.5 * v * (1.0 + std::erf(v / std::numbers::sqrt2)); }

Image apply_pointwise(const Image& img, Activation act) {
  Image out = img;
  for (double& v : out.values()) v = act == Activation::ReLU ? relu(v) : gelu(v);
  return out;
}

Image wrapped_activation(const Image& img, Activation act, const Kernel2D& kernel, PaddingMode padding) {
  return downsample2x_af(apply_pointwise(upsample2x_af(img, kernel, padding), act), kernel, padding);
}

}  // namespace aliasfree
