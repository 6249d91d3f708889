#include "aliasfree/filter_design.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "aliasfree/errors.hpp"
#include "aliasfree/special_functions.hpp"

namespace aliasfree {

void FilterSpec::validate() const {
  if (!(cutoff > 0.0 && cutoff <= std::numbers::pi)) throw DomainError("filter cutoff must lie in (0, pi]");
  if (kernel_size < 1 || kernel_size % 2 == 0) throw DomainError("kernel size must be odd and >= 1");
  if (!(kaiser_beta >= 0.0) || !std::isfinite(kaiser_beta)) throw DomainError("kaiser beta must be finite and >= 0");
}

Kernel2D::Kernel2D(int size, std::vector<double> taps) : size_(size), taps_(std::move(taps)) {
  if (size_ < 1 || size_ % 2 == 0) throw ShapeError("kernel size must be odd and >= 1");
  if (taps_.size() != static_cast<std::size_t>(size_) * size_) {
    throw ShapeError("kernel of size " + std::to_string(size_) + " needs " + std::to_string(size_ * size_) +
                     " taps, got " + std::to_string(taps_.size()));
  }
  double peak = 0.0;
  for (double t : taps_) {
    if (!std::isfinite(t)) throw DomainError("kernel taps must be finite");
    peak = std::max(peak, std::abs(t));
  }
  const int r = radius();
  const double tol = 1e-12 * peak;
  for (int a = -r; a <= r; ++a) {
    for (int b = -r; b <= r; ++b) {
      const double v = tap(a, b);
      if (std::abs(v - tap(-a, b)) > tol || std::abs(v - tap(a, -b)) > tol || std::abs(v - tap(b, a)) > tol) {
        throw DomainError("kernel taps must be symmetric under axis flips and transposition");
      }
    }
  }
}

Kernel2D Kernel2D::identity() { return Kernel2D(1, {1.0}); }

double Kernel2D::sum() const { return std::accumulate(taps_.begin(), taps_.end(), 0.0); }

double jinc_tap(const FilterSpec& spec, int n1, int n2) {
  const double wc = spec.cutoff;
  if (n1 == 0 && n2 == 0) return wc * wc / (4.0 * std::numbers::pi);
  const double rho = std::hypot(static_cast<double>(n1), static_cast<double>(n2));
  return wc * wc / (2.0 * std::numbers::pi) * jinc(wc * rho);
}

double kaiser_weight(double beta, int n, double extent) {
  if (!(extent > 0.0)) throw DomainError("kaiser window extent must be positive");
  const double ratio = 2.0 * n / extent;
  if (std::abs(n) > extent / 2.0) return 0.0;
  const double arg = beta * std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  // Scaled Bessel values keep large beta from overflowing.
  return bessel_i0_scaled(arg) / bessel_i0_scaled(beta) * std::exp(std::abs(arg) - std::abs(beta));
}

Kernel2D design_kernel(const FilterSpec& spec) {
  spec.validate();
  const int size = spec.kernel_size;
  const int r = (size - 1) / 2;
  const double extent = size - 1;

  std::vector<double> window(static_cast<std::size_t>(size), 1.0);
  if (size > 1) {
    for (int n = -r; n <= r; ++n) window[static_cast<std::size_t>(n + r)] = kaiser_weight(spec.kaiser_beta, n, extent);
  }

  std::vector<double> taps(static_cast<std::size_t>(size) * size);
  for (int a = -r; a <= r; ++a) {
    for (int b = -r; b <= r; ++b) {
      taps[static_cast<std::size_t>(a + r) * size + static_cast<std::size_t>(b + r)] =
          jinc_tap(spec, a, b) * window[static_cast<std::size_t>(a + r)] * window[static_cast<std::size_t>(b + r)];
    }
  }

  if (spec.normalized) {
    const double total = std::accumulate(taps.begin(), taps.end(), 0.0);
    if (!(total > 0.0)) throw DesignError("cannot normalize a kernel whose taps sum to " + std::to_string(total));
    for (double& t : taps) t /= total;
  }
  return Kernel2D(size, std::move(taps));
}

std::string format_kernel_text(const Kernel2D& kernel) {
  std::string out;
  char buf[40];
  const int size = kernel.size();
  for (int row = 0; row < size; ++row) {
    for (int col = 0; col < size; ++col) {
      if (col > 0) out += ' ';
      std::snprintf(buf, sizeof buf, "%.17g", kernel.taps()[static_cast<std::size_t>(row) * size + col]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Kernel2D parse_kernel_text(std::string_view text) {
  std::vector<double> taps;
  int rows = 0;
  int cols = -1;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    int count = 0;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i == line.size()) break;
      double v = 0.0;
      auto [next, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
      if (ec != std::errc{}) throw ParseError("malformed kernel tap", pos + i);
      taps.push_back(v);
      ++count;
      i = static_cast<std::size_t>(next - line.data());
    }
    if (count > 0) {
      if (cols >= 0 && count != cols) throw ParseError("kernel rows have different lengths", pos);
      cols = count;
      ++rows;
    }
    pos = eol + 1;
  }
  if (rows == 0) throw ParseError("empty kernel", 0);
  if (rows != cols) throw ParseError("kernel must be square", text.size());
  if (rows % 2 == 0) throw ParseError("kernel size must be odd", text.size());
  try {
    return Kernel2D(rows, std::move(taps));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

}  // namespace aliasfree
