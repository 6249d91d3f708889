#include "aliasfree/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "aliasfree/errors.hpp"

namespace aliasfree {

namespace {

// Power series below this magnitude, Hankel asymptotic above. The series is
// summed in long double; its largest term near |x| = 20 is ~7e6, which keeps
// cancellation error around 1e-12.
constexpr double kJ1SeriesLimit = 20.0;
constexpr double kI0SeriesLimit = 30.0;

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x)) throw DomainError(std::string(fn) + ": argument must be finite");
}

// sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!)
long double j1_series(long double x) {
  const long double half = x / 2;
  const long double q = -half * half;
  long double term = half;
  long double sum = term;
  for (int k = 0; k < 200; ++k) {
    term *= q / ((k + 1.0L) * (k + 2.0L));
    sum += term;
    if (std::fabs(term) <= 1e-24L * std::fabs(sum) && k > 2) break;
  }
  return sum;
}

// Hankel expansion; x > 0 and large enough that the terms shrink well below
// 1e-17 before diverging.
long double j1_asymptotic(long double x) {
  constexpr long double mu = 4.0L;  // 4 nu^2, nu = 1
  long double p = 0, q = 0;
  long double term = 1;
  long double prev = INFINITY;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) term *= (mu - (2.0L * k - 1) * (2.0L * k - 1)) / (8.0L * k * x);
    const long double mag = std::fabs(term);
    if (mag > prev) break;
    prev = mag;
    const long double sign = ((k / 2) % 2 == 0) ? 1.0L : -1.0L;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += sign * term;
    }
    if (mag < 1e-22L) break;
  }
  const long double chi = x - 0.75L * std::numbers::pi_v<long double>;
  return std::sqrt(2.0L / (std::numbers::pi_v<long double> * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// sum_k (x/2)^(2k) / (k!)^2
long double i0_series(long double x) {
  const long double q = x * x / 4;
  long double term = 1;
  long double sum = 1;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (term <= 1e-24L * sum) break;
  }
  return sum;
}

// exp(-x) I0(x) for x >= kI0SeriesLimit.
long double i0_scaled_asymptotic(long double x) {
  long double term = 1;
  long double sum = 1;
  long double prev = 1;
  for (int k = 1; k < 200; ++k) {
    term *= (2.0L * k - 1) * (2.0L * k - 1) / (8.0L * k * x);
    if (term > prev) break;
    prev = term;
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return sum / std::sqrt(2.0L * std::numbers::pi_v<long double> * x);
}

}  // namespace

double bessel_j1(double x) {
  require_finite(x, "bessel_j1");
  const long double ax = std::fabs(static_cast<long double>(x));
  const long double v = ax <= kJ1SeriesLimit ? j1_series(ax) : j1_asymptotic(ax);
  return static_cast<double>(x < 0 ? -v : v);
}

double bessel_i0(double x) {
  require_finite(x, "bessel_i0");
  const long double ax = std::fabs(static_cast<long double>(x));
  if (ax <= kI0SeriesLimit) return static_cast<double>(i0_series(ax));
  return static_cast<double>(std::exp(ax) * i0_scaled_asymptotic(ax));
}

double bessel_i0_scaled(double x) {
  require_finite(x, "bessel_i0_scaled");
  const long double ax = std::fabs(static_cast<long double>(x));
  if (ax <= kI0SeriesLimit) return static_cast<double>(std::exp(-ax) * i0_series(ax));
  return static_cast<double>(i0_scaled_asymptotic(ax));
}

double jinc(double x) {
  require_finite(x, "jinc");
  // J1(x)/x loses digits near zero; the two-term series is exact to ~1e-18 here.
  if (std::fabs(x) < 1e-4) return 0.5 - x * x / 16.0;
  return bessel_j1(x) / x;
}

}  // namespace aliasfree
