#pragma once

#include <iosfwd>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aliasfree {

/// One point of the anti-aliasing filter parameter space.
struct FilterSpec {
  double cutoff = std::numbers::pi / 2;  ///< radians/sample, in (0, pi]
  int kernel_size = 3;                   ///< odd, >= 1
  double kaiser_beta = 0.0;              ///< >= 0
  bool normalized = false;

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

/// Odd-sized square filter with taps indexed n1, n2 in [-r, r].
///
/// Construction checks that the matrix is square, odd-sized, finite, and has
/// the 4-fold plus diagonal symmetry of a circularly symmetric filter.
class Kernel2D {
 public:
  Kernel2D(int size, std::vector<double> taps);

  /// The 1x1 kernel [[1]].
  static Kernel2D identity();

  int size() const { return size_; }
  int radius() const { return (size_ - 1) / 2; }
  double tap(int n1, int n2) const {
    return taps_[static_cast<std::size_t>(n1 + radius()) * size_ + static_cast<std::size_t>(n2 + radius())];
  }
  /// Row-major, rows n1 = -r..r.
  std::span<const double> taps() const { return taps_; }
  double sum() const;

  friend bool operator==(const Kernel2D&, const Kernel2D&) = default;

 private:
  int size_;
  std::vector<double> taps_;
};

/// Ideal circular low-pass impulse response (cutoff^2 / 2pi) * jinc(cutoff * rho)
/// at integer offset (n1, n2); the centre uses the limit cutoff^2 / 4pi.
double jinc_tap(const FilterSpec& spec, int n1, int n2);

/// Kaiser window I0(beta * sqrt(1 - (2n/L)^2)) / I0(beta) on |n| <= L/2, zero
/// outside. Requires L > 0.
double kaiser_weight(double beta, int n, double extent);

/// Windowed (separably, extent L = kernel_size - 1) and optionally
/// sum-normalized jinc kernel.
Kernel2D design_kernel(const FilterSpec& spec);

/// Text form: one row per line, n1 = -r..r; taps separated by single spaces.
std::string format_kernel_text(const Kernel2D& kernel);
Kernel2D parse_kernel_text(std::string_view text);

}  // namespace aliasfree
