#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "aliasfree/activation.hpp"
#include "aliasfree/filter_design.hpp"
#include "aliasfree/image.hpp"
#include "aliasfree/pipeline.hpp"

namespace aliasfree {

/// N x N grid of 2D DFT coefficients. Storage is natural FFT order; at() takes
/// signed frequency indices k in [-N/2, N/2), i.e. omega = 2 pi k / N.
class SpectrumGrid {
 public:
  explicit SpectrumGrid(int n);

  int n() const { return n_; }
  std::complex<double>& at(int k1, int k2) { return data_[slot(k1, k2)]; }
  const std::complex<double>& at(int k1, int k2) const { return data_[slot(k1, k2)]; }
  double magnitude(int k1, int k2) const { return std::abs(at(k1, k2)); }
  double energy() const;

 private:
  std::size_t slot(int k1, int k2) const;

  int n_;
  std::vector<std::complex<double>> data_;
};

/// Angular frequency 2 pi k / N of signed index k.
double angular_frequency(int k, int n);

/// Unnormalized forward DFT of one channel of a square image.
SpectrumGrid dft2(const Image& img, int channel = 0);

/// Real part of the inverse DFT (with the 1/N^2 factor), as a 1-channel image.
Image idft2_real(const SpectrumGrid& spectrum);

/// Zero-phase response of the kernel embedded at the origin of an N x N grid.
/// at(0, 0) equals the tap sum.
SpectrumGrid freq_response(const Kernel2D& kernel, int n);

/// Fraction of spectral energy with max(|w1|, |w2|) > cutoff, summed over
/// channels. Zero for an all-zero image.
double alias_energy(const Image& img, double cutoff);

/// Spectral test corpus: white noise from Rng(seed), DFT, every coefficient
/// with max(|w1|, |w2|) >= band_edge zeroed, inverse DFT, scaled to peak
/// magnitude 0.9.
Image band_limited_image(int n, std::uint64_t seed, double band_edge = 0.8 * std::numbers::pi / 2,
                         int channels = 1);

/// Seeds of the documented spectral test corpus.
inline constexpr std::uint64_t kCorpusSeeds[] = {11, 22, 33, 44, 55};

/// Band-limited ideal of act(x): exact Fourier interpolation of x to
/// `oversample` x the rate, act at that rate, then an ideal low-pass to
/// `cutoff` and back to the original grid.
Image oversampled_reference(const Image& img, Activation act, int oversample, double cutoff);

/// Energy of (out - ideal) at max(|w1|, |w2|) > cutoff, relative to the
/// ideal's total energy.
double high_band_excess(const Image& out, const Image& ideal, double cutoff);

/// ||P(R x) - R P(x)|| / ||R P(x)|| over the disk inscribed in the image,
/// shrunk by a 2-pixel guard band, where R rotates by phi (edge replicate)
/// and P is the configuration's pipeline. Square single- or multi-channel
/// input.
double equivariance_error(const PipelineConfig& config, const Image& img, double phi);

/// CSV "k1,k2,magnitude", one coefficient per line, k1 then k2 ascending from
/// -N/2.
void write_spectrum_csv(std::ostream& out, const SpectrumGrid& spectrum);

}  // namespace aliasfree
