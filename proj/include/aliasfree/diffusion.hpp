#pragma once

#include <cstdint>
#include <vector>

#include "aliasfree/image.hpp"
#include "aliasfree/rng.hpp"
#include "aliasfree/rotation.hpp"

namespace aliasfree {

enum class SigmaMode { Beta, Zero };

/// Per-step DDPM coefficients. Public accessors take the 1-based timestep
/// t in [1, T]; storage is 0-based.
class NoiseSchedule {
 public:
  NoiseSchedule(std::vector<double> betas, SigmaMode sigma_mode);

  int steps() const { return static_cast<int>(beta_.size()); }
  double beta(int t) const { return beta_[slot(t)]; }
  double alpha(int t) const { return alpha_[slot(t)]; }
  double alpha_bar(int t) const { return alpha_bar_[slot(t)]; }
  double sigma(int t) const { return sigma_[slot(t)]; }
  SigmaMode sigma_mode() const { return sigma_mode_; }

 private:
  std::size_t slot(int t) const;

  std::vector<double> beta_;
  std::vector<double> alpha_;
  std::vector<double> alpha_bar_;
  std::vector<double> sigma_;
  SigmaMode sigma_mode_;
};

/// beta_t linear from beta_start (t = 1) to beta_end (t = T).
NoiseSchedule linear_schedule(int steps, double beta_start, double beta_end, SigmaMode sigma_mode);

/// T = 1000, beta linear from 1e-4 to 0.02.
NoiseSchedule default_schedule(SigmaMode sigma_mode = SigmaMode::Beta);

/// sqrt(alpha_bar_t) x0 + sqrt(1 - alpha_bar_t) eps.
Image forward_noise(const Image& x0, int t, const Image& eps, const NoiseSchedule& sched);

/// Noise predictor eps(x_t, t). Implementations must be deterministic and
/// safe to call concurrently.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual Image predict(const Image& x_t, int t) const = 0;
};

class ZeroDenoiser final : public Denoiser {
 public:
  Image predict(const Image& x_t, int t) const override;
};

class ConstantDenoiser final : public Denoiser {
 public:
  explicit ConstantDenoiser(double value) : value_(value) {}
  Image predict(const Image& x_t, int t) const override;

 private:
  double value_;
};

/// Isotropic Gaussian data: every element i.i.d. N(mean, stddev^2).
struct GaussianDataSpec {
  double mean = 0.0;
  double stddev = 1.0;
  Shape shape{};

  void validate() const;
};

/// Exact E[eps | x_t] for Gaussian data under the forward process:
///   sqrt(1 - abar) (x_t - sqrt(abar) mu) / (abar s0^2 + 1 - abar).
class AnalyticGaussianDenoiser final : public Denoiser {
 public:
  AnalyticGaussianDenoiser(GaussianDataSpec data, NoiseSchedule sched);
  Image predict(const Image& x_t, int t) const override;

 private:
  GaussianDataSpec data_;
  NoiseSchedule sched_;
};

/// base.predict(...) + offset. Holds a reference; `base` must outlive it.
class OffsetDenoiser final : public Denoiser {
 public:
  OffsetDenoiser(const Denoiser& base, double offset) : base_(base), offset_(offset) {}
  Image predict(const Image& x_t, int t) const override;

 private:
  const Denoiser& base_;
  double offset_;
};

/// Monte-Carlo estimate of E ||eps - denoiser(x_t, t)||^2. Per draw the RNG is
/// consumed as: x0 normals (row-major), t via index(T), eps normals.
double training_loss(const Denoiser& denoiser, const GaussianDataSpec& data, const NoiseSchedule& sched,
                     int n_draws, Rng& rng);

/// Reverse process from a given x_T. After each update x_{t-1} is rotated by
/// `step_angle` when it is non-zero.
Image reverse_process(const Denoiser& denoiser, const NoiseSchedule& sched, Image x_T, Rng& rng,
                      double step_angle = 0.0, FillMode fill = FillMode::ReplicateEdge);

/// x_T ~ N(0, I) then the classical reverse process.
Image sample_classical(const Denoiser& denoiser, const NoiseSchedule& sched, const Shape& shape, Rng& rng);

/// As sample_classical, rotating by phi / T after every step.
Image sample_rotated(const Denoiser& denoiser, const NoiseSchedule& sched, const Shape& shape, double phi,
                     Rng& rng, FillMode fill = FillMode::ReplicateEdge);

}  // namespace aliasfree
