#include "aliasfree/rng.hpp"

#include <cmath>
#include <numbers>

namespace aliasfree {

namespace {
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;
}

double Rng::uniform() { return static_cast<double>((engine_() >> 11) + 1) * kTwoPow53Inv; }

double Rng::normal() {
  if (cached_normal_) {
    const double z = *cached_normal_;
    cached_normal_.reset();
    return z;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(theta);
  return radius * std::cos(theta);
}

std::uint64_t Rng::index(std::uint64_t n) {
  const double u = static_cast<double>(engine_() >> 11) * kTwoPow53Inv;
  const auto i = static_cast<std::uint64_t>(u * static_cast<double>(n));
  return i < n ? i : n - 1;
}

Image Rng::normal_image(const Shape& shape) {
  Image img(shape);
  for (double& v : img.values()) v = normal();
  return img;
}

}  // namespace aliasfree
