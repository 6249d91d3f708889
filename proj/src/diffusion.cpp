#include "aliasfree/diffusion.hpp"

#include <cmath>

#include "aliasfree/errors.hpp"

namespace aliasfree {

namespace {

void require_same_shape(const Image& a, const Image& b, const char* what) {
  if (!(a.shape() == b.shape())) {
    throw ShapeError(std::string(what) + ": shape mismatch " + to_string(a.shape()) + " vs " + to_string(b.shape()));
  }
}

}  // namespace

NoiseSchedule::NoiseSchedule(std::vector<double> betas, SigmaMode sigma_mode)
    : beta_(std::move(betas)), sigma_mode_(sigma_mode) {
  if (beta_.empty()) throw DomainError("noise schedule needs at least one step");
  alpha_.resize(beta_.size());
  alpha_bar_.resize(beta_.size());
  sigma_.resize(beta_.size());
  double running = 1.0;
  for (std::size_t i = 0; i < beta_.size(); ++i) {
    const double b = beta_[i];
    if (!(b > 0.0 && b < 1.0)) throw DomainError("every beta_t must lie in (0, 1)");
    alpha_[i] = 1.0 - b;
    running *= alpha_[i];
    alpha_bar_[i] = running;
    sigma_[i] = sigma_mode == SigmaMode::Beta ? std::sqrt(b) : 0.0;
  }
}

std::size_t NoiseSchedule::slot(int t) const {
  if (t < 1 || t > steps()) {
    throw DomainError("timestep " + std::to_string(t) + " outside [1, " + std::to_string(steps()) + "]");
  }
  return static_cast<std::size_t>(t - 1);
}

NoiseSchedule linear_schedule(int steps, double beta_start, double beta_end, SigmaMode sigma_mode) {
  if (steps < 1) throw DomainError("schedule needs T >= 1");
  if (!(beta_start > 0.0 && beta_start <= beta_end && beta_end < 1.0)) {
    throw DomainError("schedule needs 0 < beta_start <= beta_end < 1");
  }
  std::vector<double> betas(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double frac = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    betas[static_cast<std::size_t>(i)] = beta_start + frac * (beta_end - beta_start);
  }
  if (steps > 1) betas.back() = beta_end;
  return NoiseSchedule(std::move(betas), sigma_mode);
}

NoiseSchedule default_schedule(SigmaMode sigma_mode) { return linear_schedule(1000, 1e-4, 0.02, sigma_mode); }

Image forward_noise(const Image& x0, int t, const Image& eps, const NoiseSchedule& sched) {
  require_same_shape(x0, eps, "forward_noise");
  const double signal = std::sqrt(sched.alpha_bar(t));
  const double noise = std::sqrt(1.0 - sched.alpha_bar(t));
  Image out(x0.shape());
  auto o = out.values();
  auto a = x0.values();
  auto e = eps.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = signal * a[i] + noise * e[i];
  return out;
}

Image ZeroDenoiser::predict(const Image& x_t, int) const { return Image(x_t.shape(), 0.0); }

Image ConstantDenoiser::predict(const Image& x_t, int) const { return Image(x_t.shape(), value_); }

void GaussianDataSpec::validate() const {
  if (!(stddev > 0.0) || !std::isfinite(stddev)) throw DomainError("Gaussian data stddev must be positive");
  if (!std::isfinite(mean)) throw DomainError("Gaussian data mean must be finite");
  if (shape.channels < 1 || shape.height < 1 || shape.width < 1) throw ShapeError("data shape must be positive");
}

AnalyticGaussianDenoiser::AnalyticGaussianDenoiser(GaussianDataSpec data, NoiseSchedule sched)
    : data_(data), sched_(std::move(sched)) {
  data_.validate();
}

Image AnalyticGaussianDenoiser::predict(const Image& x_t, int t) const {
  const double abar = sched_.alpha_bar(t);
  const double gain = std::sqrt(1.0 - abar) / (abar * data_.stddev * data_.stddev + 1.0 - abar);
  const double centre = std::sqrt(abar) * data_.mean;
  Image out(x_t.shape());
  auto o = out.values();
  auto x = x_t.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = gain * (x[i] - centre);
  return out;
}

Image OffsetDenoiser::predict(const Image& x_t, int t) const {
  Image out = base_.predict(x_t, t);
  for (double& v : out.values()) v += offset_;
  return out;
}

double training_loss(const Denoiser& denoiser, const GaussianDataSpec& data, const NoiseSchedule& sched,
                     int n_draws, Rng& rng) {
  if (n_draws < 1) throw DomainError("training_loss needs n_draws >= 1");
  data.validate();
  double total = 0.0;
  for (int d = 0; d < n_draws; ++d) {
    Image x0 = rng.normal_image(data.shape);
    for (double& v : x0.values()) v = data.mean + data.stddev * v;
    const int t = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(sched.steps())));
    const Image eps = rng.normal_image(data.shape);

    const Image predicted = denoiser.predict(forward_noise(x0, t, eps, sched), t);
    require_same_shape(predicted, eps, "denoiser output");
    const double err = l2_distance(eps, predicted);
    total += err * err;
  }
  return total / n_draws;
}

Image reverse_process(const Denoiser& denoiser, const NoiseSchedule& sched, Image x_T, Rng& rng, double step_angle,
                      FillMode fill) {
  Image x = std::move(x_T);
  for (int t = sched.steps(); t >= 1; --t) {
    const Image eps = denoiser.predict(x, t);
    require_same_shape(eps, x, "denoiser output");
    const double inv_sqrt_alpha = 1.0 / std::sqrt(sched.alpha(t));
    const double eps_scale = (1.0 - sched.alpha(t)) / std::sqrt(1.0 - sched.alpha_bar(t));
    const double sigma = sched.sigma(t);

    auto xv = x.values();
    auto ev = eps.values();
    for (std::size_t i = 0; i < xv.size(); ++i) xv[i] = inv_sqrt_alpha * (xv[i] - eps_scale * ev[i]);
    if (t > 1) {
      // z is drawn even when sigma_t = 0; both sigma modes consume the
      // stream identically.
      for (double& v : xv) v += sigma * rng.normal();
    }
    if (step_angle != 0.0) x = rotate(x, {step_angle, fill});
  }
  return x;
}

Image sample_classical(const Denoiser& denoiser, const NoiseSchedule& sched, const Shape& shape, Rng& rng) {
  Image x_T = rng.normal_image(shape);
  return reverse_process(denoiser, sched, std::move(x_T), rng);
}

Image sample_rotated(const Denoiser& denoiser, const NoiseSchedule& sched, const Shape& shape, double phi, Rng& rng,
                     FillMode fill) {
  if (!std::isfinite(phi)) throw DomainError("rotation angle must be finite");
  Image x_T = rng.normal_image(shape);
  return reverse_process(denoiser, sched, std::move(x_T), rng, phi / sched.steps(), fill);
}

}  // namespace aliasfree
