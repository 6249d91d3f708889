#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "aliasfree/image.hpp"

namespace aliasfree {

/// Seeded deterministic stream: std::mt19937_64 (whose output sequence the
/// C++ standard fixes) with hand-rolled conversions, so draws are identical
/// across standard libraries.
///
///   uniform():  ((u >> 11) + 1) * 2^-53, in (0, 1]
///   normal():   Box-Muller on two uniforms u1, u2; returns
///               sqrt(-2 ln u1) cos(2 pi u2) and caches the sin() partner
///               for the next call
///   index(n):   floor(((u >> 11) * 2^-53) * n), in [0, n)
///
/// index() and next_u64() draw from the engine directly and leave a cached
/// normal untouched.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Sub-stream for the i-th independent trajectory: seed XOR index.
  static Rng for_trajectory(std::uint64_t seed, std::uint64_t index) { return Rng(seed ^ index); }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();
  std::uint64_t index(std::uint64_t n);

  /// Image of i.i.d. standard normals drawn in row-major element order.
  Image normal_image(const Shape& shape);

 private:
  std::mt19937_64 engine_;
  std::optional<double> cached_normal_;
};

}  // namespace aliasfree
