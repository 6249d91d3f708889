#include "aliasfree/rotation.hpp"

#include <algorithm>
#include <cmath>

#include "aliasfree/errors.hpp"

namespace aliasfree {

namespace {

// Sample coordinates this close to a grid line are taken as exact, so
// quarter turns permute pixels without interpolation.
constexpr double kSnap = 1e-9;

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < kSnap ? r : v;
}

}  // namespace

std::string to_string(FillMode fill) { return fill == FillMode::ReplicateEdge ? "replicate" : "zero"; }

std::optional<FillMode> parse_fill_mode(std::string_view name) {
  if (name == "replicate" || name == "edge") return FillMode::ReplicateEdge;
  if (name == "zero") return FillMode::Zero;
  return std::nullopt;
}

Image rotate(const Image& img, const RotationParams& params) {
  if (!std::isfinite(params.angle)) throw DomainError("rotation angle must be finite");
  const int h = img.height();
  const int w = img.width();
  const double cy = (h - 1) / 2.0;
  const double cx = (w - 1) / 2.0;
  const double cs = std::cos(params.angle);
  const double sn = std::sin(params.angle);

  Image out(img.shape());
  for (int r = 0; r < h; ++r) {
    for (int col = 0; col < w; ++col) {
      const double dr = r - cy;
      const double dc = col - cx;
      // Inverse map. Display y points up, so a counter-clockwise turn of the
      // content reads the source at R(-angle) of the destination offset.
      double sy = snap(cy + sn * dc + cs * dr);
      double sx = snap(cx + cs * dc - sn * dr);

      if (params.fill == FillMode::Zero) {
        if (sy < 0.0 || sy > h - 1 || sx < 0.0 || sx > w - 1) {
          for (int c = 0; c < img.channels(); ++c) out(c, r, col) = 0.0;
          continue;
        }
      } else {
        sy = std::clamp(sy, 0.0, static_cast<double>(h - 1));
        sx = std::clamp(sx, 0.0, static_cast<double>(w - 1));
      }

      const int y0 = static_cast<int>(std::floor(sy));
      const int x0 = static_cast<int>(std::floor(sx));
      const int y1 = std::min(y0 + 1, h - 1);
      const int x1 = std::min(x0 + 1, w - 1);
      const double fy = sy - y0;
      const double fx = sx - x0;
      for (int c = 0; c < img.channels(); ++c) {
        if (fy == 0.0 && fx == 0.0) {
          out(c, r, col) = img(c, y0, x0);
          continue;
        }
        const double top = img(c, y0, x0) + fx * (img(c, y0, x1) - img(c, y0, x0));
        const double bottom = img(c, y1, x0) + fx * (img(c, y1, x1) - img(c, y1, x0));
        out(c, r, col) = top + fy * (bottom - top);
      }
    }
  }
  return out;
}

}  // namespace aliasfree
