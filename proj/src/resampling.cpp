#include "aliasfree/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aliasfree/errors.hpp"

namespace aliasfree {

namespace {

// Mirror about the edge samples without repeating them; valid for any
// offset, periodic with period 2(n - 1).
int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

// table[pos * size + (k + r)] = source index of pos - k, or -1 for zero padding.
std::vector<int> source_table(int n, int radius, PaddingMode padding) {
  const int size = 2 * radius + 1;
  std::vector<int> table(static_cast<std::size_t>(n) * size);
  for (int pos = 0; pos < n; ++pos) {
    for (int k = -radius; k <= radius; ++k) {
      int src = pos - k;
      if (src < 0 || src >= n) src = padding == PaddingMode::Reflect ? reflect_index(src, n) : -1;
      table[static_cast<std::size_t>(pos) * size + static_cast<std::size_t>(k + radius)] = src;
    }
  }
  return table;
}

void require_even(const Image& img, const char* op) {
  if (img.height() % 2 != 0 || img.width() % 2 != 0) {
    throw ShapeError(std::string(op) + " needs even height and width, got " + to_string(img.shape()));
  }
}

}  // namespace

Image convolve2d(const Image& img, const Kernel2D& kernel, PaddingMode padding) {
  const int h = img.height();
  const int w = img.width();
  const int r = kernel.radius();
  const int size = kernel.size();
  if (padding == PaddingMode::Reflect && size > 2 * std::min(h, w) + 1) {
    throw GeometryError("kernel of size " + std::to_string(size) + " is too large for reflect padding of a " +
                        std::to_string(h) + "x" + std::to_string(w) + " image");
  }

  const std::vector<int> rows = source_table(h, r, padding);
  const std::vector<int> cols = source_table(w, r, padding);
  const auto taps = kernel.taps();

  Image out(img.shape());
  for (int c = 0; c < img.channels(); ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int i = 0; i < size; ++i) {
          const int sy = rows[static_cast<std::size_t>(y) * size + i];
          if (sy < 0) continue;
          for (int j = 0; j < size; ++j) {
            const int sx = cols[static_cast<std::size_t>(x) * size + j];
            if (sx < 0) continue;
            acc += taps[static_cast<std::size_t>(i) * size + j] * img(c, sy, sx);
          }
        }
        out(c, y, x) = acc;
      }
    }
  }
  return out;
}

Image downsample2x_naive(const Image& img) {
  require_even(img, "downsample2x_naive");
  Image out({img.channels(), img.height() / 2, img.width() / 2});
  for (int c = 0; c < out.channels(); ++c) {
    for (int y = 0; y < out.height(); ++y) {
      for (int x = 0; x < out.width(); ++x) {
        out(c, y, x) = std::max({img(c, 2 * y, 2 * x), img(c, 2 * y, 2 * x + 1), img(c, 2 * y + 1, 2 * x),
                                 img(c, 2 * y + 1, 2 * x + 1)});
      }
    }
  }
  return out;
}

Image upsample2x_naive(const Image& img) {
  const int h = img.height();
  const int w = img.width();
  if (h < 2 || w < 2) {
    throw ShapeError("align-corners upsampling needs height and width >= 2, got " + to_string(img.shape()));
  }

  struct Tap {
    int lo;
    int hi;
    double frac;
  };
  auto axis = [](int n) {
    std::vector<Tap> taps(static_cast<std::size_t>(2 * n));
    for (int u = 0; u < 2 * n; ++u) {
      const double pos = static_cast<double>(u * (n - 1)) / static_cast<double>(2 * n - 1);
      const int lo = std::min(static_cast<int>(std::floor(pos)), n - 1);
      taps[static_cast<std::size_t>(u)] = {lo, std::min(lo + 1, n - 1), pos - lo};
    }
    return taps;
  };
  const auto ys = axis(h);
  const auto xs = axis(w);

  Image out({img.channels(), 2 * h, 2 * w});
  for (int c = 0; c < img.channels(); ++c) {
    for (int v = 0; v < 2 * h; ++v) {
      const Tap& ty = ys[static_cast<std::size_t>(v)];
      for (int u = 0; u < 2 * w; ++u) {
        const Tap& tx = xs[static_cast<std::size_t>(u)];
        const double top = img(c, ty.lo, tx.lo) + tx.frac * (img(c, ty.lo, tx.hi) - img(c, ty.lo, tx.lo));
        const double bottom = img(c, ty.hi, tx.lo) + tx.frac * (img(c, ty.hi, tx.hi) - img(c, ty.hi, tx.lo));
        out(c, v, u) = top + ty.frac * (bottom - top);
      }
    }
  }
  return out;
}

Image downsample2x_af(const Image& img, const Kernel2D& kernel, PaddingMode padding) {
  require_even(img, "downsample2x_af");
  const Image filtered = convolve2d(img, kernel, padding);
  Image out({img.channels(), img.height() / 2, img.width() / 2});
  for (int c = 0; c < out.channels(); ++c) {
    for (int y = 0; y < out.height(); ++y) {
      for (int x = 0; x < out.width(); ++x) out(c, y, x) = filtered(c, 2 * y, 2 * x);
    }
  }
  return out;
}

Image upsample2x_af(const Image& img, const Kernel2D& kernel, PaddingMode padding) {
  Image stuffed({img.channels(), 2 * img.height(), 2 * img.width()}, 0.0);
  for (int c = 0; c < img.channels(); ++c) {
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) stuffed(c, 2 * y, 2 * x) = img(c, y, x);
    }
  }
  Image out = convolve2d(stuffed, kernel, padding);
  out *= 4.0;
  return out;
}

}  // namespace aliasfree
