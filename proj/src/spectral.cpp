#include "aliasfree/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "aliasfree/errors.hpp"
#include "aliasfree/rng.hpp"
#include "aliasfree/rotation.hpp"

namespace aliasfree {

namespace {

using cplx = std::complex<double>;

// Separable direct DFT over an n x n row-major grid, O(n^3).
void dft_inplace(std::vector<cplx>& grid, int n, bool inverse) {
  std::vector<cplx> twiddle(static_cast<std::size_t>(n));
  const double sign = inverse ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) twiddle[static_cast<std::size_t>(k)] = std::polar(1.0, sign * 2.0 * std::numbers::pi * k / n);

  std::vector<cplx> line(static_cast<std::size_t>(n));
  std::vector<cplx> result(static_cast<std::size_t>(n));
  auto transform = [&](std::size_t start, std::size_t stride) {
    for (int i = 0; i < n; ++i) line[static_cast<std::size_t>(i)] = grid[start + static_cast<std::size_t>(i) * stride];
    for (int k = 0; k < n; ++k) {
      cplx acc = 0.0;
      std::size_t phase = 0;
      for (int i = 0; i < n; ++i) {
        acc += line[static_cast<std::size_t>(i)] * twiddle[phase];
        phase += static_cast<std::size_t>(k);
        if (phase >= static_cast<std::size_t>(n)) phase -= static_cast<std::size_t>(n);
      }
      result[static_cast<std::size_t>(k)] = acc;
    }
    for (int i = 0; i < n; ++i) grid[start + static_cast<std::size_t>(i) * stride] = result[static_cast<std::size_t>(i)];
  };
  for (int row = 0; row < n; ++row) transform(static_cast<std::size_t>(row) * n, 1);
  for (int col = 0; col < n; ++col) transform(static_cast<std::size_t>(col), static_cast<std::size_t>(n));
  if (inverse) {
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (cplx& v : grid) v *= scale;
  }
}


void require_square(const Image& img, const char* op) {
  if (img.height() != img.width()) {
    throw ShapeError(std::string(op) + " needs a square image, got " + to_string(img.shape()));
  }
}

double band_radius(int k1, int k2, int n) {
  return std::max(std::abs(angular_frequency(k1, n)), std::abs(angular_frequency(k2, n)));
}

}  // namespace

SpectrumGrid::SpectrumGrid(int n) : n_(n) {
  if (n < 1) throw ShapeError("spectrum size must be positive");
  data_.assign(static_cast<std::size_t>(n) * n, cplx{});
}

std::size_t SpectrumGrid::slot(int k1, int k2) const {
  auto wrap = [this](int k) { return static_cast<std::size_t>(((k % n_) + n_) % n_); };
  return wrap(k1) * static_cast<std::size_t>(n_) + wrap(k2);
}

double SpectrumGrid::energy() const {
  double e = 0.0;
  for (const cplx& v : data_) e += std::norm(v);
  return e;
}

double angular_frequency(int k, int n) { return 2.0 * std::numbers::pi * k / n; }

SpectrumGrid dft2(const Image& img, int channel) {
  require_square(img, "dft2");
  const int n = img.height();
  std::vector<cplx> grid(static_cast<std::size_t>(n) * n);
  auto plane = img.plane(channel);
  std::copy(plane.begin(), plane.end(), grid.begin());
  dft_inplace(grid, n, false);

  SpectrumGrid out(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) out.at(a, b) = grid[static_cast<std::size_t>(a) * n + b];
  }
  return out;
}

Image idft2_real(const SpectrumGrid& spectrum) {
  const int n = spectrum.n();
  std::vector<cplx> grid(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) grid[static_cast<std::size_t>(a) * n + b] = spectrum.at(a, b);
  }
  dft_inplace(grid, n, true);
  Image out({1, n, n});
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = grid[i].real();
  return out;
}

SpectrumGrid freq_response(const Kernel2D& kernel, int n) {
  if (n < kernel.size()) {
    throw ShapeError("frequency grid " + std::to_string(n) + " is smaller than the kernel (" +
                     std::to_string(kernel.size()) + ")");
  }
  Image embedded({1, n, n}, 0.0);
  const int r = kernel.radius();
  for (int a = -r; a <= r; ++a) {
    for (int b = -r; b <= r; ++b) embedded(0, (a + n) % n, (b + n) % n) = kernel.tap(a, b);
  }
  return dft2(embedded);
}

double alias_energy(const Image& img, double cutoff) {
  require_square(img, "alias_energy");
  const int n = img.height();
  double above = 0.0;
  double total = 0.0;
  for (int c = 0; c < img.channels(); ++c) {
    const SpectrumGrid spec = dft2(img, c);
    for (int a = -n / 2; a < n - n / 2; ++a) {
      for (int b = -n / 2; b < n - n / 2; ++b) {
        const double e = std::norm(spec.at(a, b));
        total += e;
        if (band_radius(a, b, n) > cutoff) above += e;
      }
    }
  }
  if (total == 0.0) return 0.0;
  return std::clamp(above / total, 0.0, 1.0);
}

Image band_limited_image(int n, std::uint64_t seed, double band_edge, int channels) {
  Rng rng(seed);
  Image out({channels, n, n});
  for (int c = 0; c < channels; ++c) {
    const Image noise = rng.normal_image({1, n, n});
    SpectrumGrid spec = dft2(noise);
    for (int a = -n / 2; a < n - n / 2; ++a) {
      for (int b = -n / 2; b < n - n / 2; ++b) {
        if (band_radius(a, b, n) >= band_edge) spec.at(a, b) = 0.0;
      }
    }
    const Image plane = idft2_real(spec);
    std::copy(plane.values().begin(), plane.values().end(), out.plane(c).begin());
  }
  double peak = 0.0;
  for (double v : out.values()) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) out *= 0.9 / peak;
  return out;
}

Image oversampled_reference(const Image& img, Activation act, int oversample, double cutoff) {
  require_square(img, "oversampled_reference");
  if (oversample < 1) throw DomainError("oversampling factor must be >= 1");
  const int n = img.height();
  const int m = n * oversample;
  const double gain = static_cast<double>(oversample) * oversample;

  Image out(img.shape());
  for (int c = 0; c < img.channels(); ++c) {
    const SpectrumGrid coarse = dft2(img, c);
    SpectrumGrid fine(m);
    // A Nyquist bin of an even grid is shared by +-N/2 on the finer grid.
    auto targets = [n](int k) {
      std::vector<std::pair<int, double>> t;
      if (n % 2 == 0 && k == -n / 2) {
        t = {{-n / 2, 0.5}, {n / 2, 0.5}};
      } else {
        t = {{k, 1.0}};
      }
      return t;
    };
    for (int a = -n / 2; a < n - n / 2; ++a) {
      for (int b = -n / 2; b < n - n / 2; ++b) {
        for (auto [ta, wa] : targets(a)) {
          for (auto [tb, wb] : targets(b)) fine.at(ta, tb) += coarse.at(a, b) * (wa * wb * gain);
        }
      }
    }
    Image dense = idft2_real(fine);
    dense = apply_pointwise(dense, act);

    const SpectrumGrid dense_spec = dft2(dense);
    SpectrumGrid band(n);
    for (int a = -n / 2; a < n - n / 2; ++a) {
      for (int b = -n / 2; b < n - n / 2; ++b) {
        if (band_radius(a, b, n) <= cutoff) band.at(a, b) = dense_spec.at(a, b) / gain;
      }
    }
    const Image plane = idft2_real(band);
    std::copy(plane.values().begin(), plane.values().end(), out.plane(c).begin());
  }
  return out;
}

double high_band_excess(const Image& out, const Image& ideal, double cutoff) {
  require_square(out, "high_band_excess");
  const Image residual = out - ideal;
  const int n = out.height();
  double above = 0.0;
  double reference = 0.0;
  for (int c = 0; c < out.channels(); ++c) {
    const SpectrumGrid spec = dft2(residual, c);
    for (int a = -n / 2; a < n - n / 2; ++a) {
      for (int b = -n / 2; b < n - n / 2; ++b) {
        if (band_radius(a, b, n) > cutoff) above += std::norm(spec.at(a, b));
      }
    }
    reference += dft2(ideal, c).energy();
  }
  if (reference == 0.0) return above == 0.0 ? 0.0 : INFINITY;
  return above / reference;
}

double equivariance_error(const PipelineConfig& config, const Image& img, double phi) {
  require_square(img, "equivariance_error");
  const RotationParams rot{phi, FillMode::ReplicateEdge};
  const Image lhs = run_pipeline(config, rotate(img, rot));
  const Image rhs = rotate(run_pipeline(config, img), rot);

  const int n = img.height();
  const double centre = (n - 1) / 2.0;
  const double radius = n / 2.0 - 2.0;
  double diff = 0.0;
  double norm = 0.0;
  for (int c = 0; c < img.channels(); ++c) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        if (std::hypot(y - centre, x - centre) > radius) continue;
        const double d = lhs(c, y, x) - rhs(c, y, x);
        diff += d * d;
        norm += rhs(c, y, x) * rhs(c, y, x);
      }
    }
  }
  if (norm == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
  return std::sqrt(diff / norm);
}

void write_spectrum_csv(std::ostream& out, const SpectrumGrid& spectrum) {
  const int n = spectrum.n();
  out << "k1,k2,magnitude\n";
  char buf[64];
  for (int a = -n / 2; a < n - n / 2; ++a) {
    for (int b = -n / 2; b < n - n / 2; ++b) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", a, b, spectrum.magnitude(a, b));
      out << buf;
    }
  }
}

}  // namespace aliasfree
