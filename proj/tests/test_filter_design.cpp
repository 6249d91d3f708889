#include <doctest.h>

#include <cmath>
#include <numbers>

#include "aliasfree/errors.hpp"
#include "aliasfree/filter_design.hpp"
#include "aliasfree/spectral.hpp"
#include "oracles.hpp"

using namespace aliasfree;

namespace {

FilterSpec grid_spec(double beta, bool normalized) {
  FilterSpec s;
  s.kaiser_beta = beta;
  s.normalized = normalized;
  return s;
}

}  // namespace

TEST_CASE("jinc_tap at cutoff pi/2") {
  const FilterSpec spec;
  CHECK(jinc_tap(spec, 0, 0) == doctest::Approx(std::numbers::pi / 16).epsilon(1e-15));

  const double edge = static_cast<double>(std::numbers::pi_v<long double> / 8 * oracle::jinc_series(std::numbers::pi_v<long double> / 2));
  const double corner = static_cast<double>(std::numbers::pi_v<long double> / 8 *
                                            oracle::jinc_series(std::numbers::pi_v<long double> * std::sqrt(2.0L) / 2));
  CHECK(std::abs(jinc_tap(spec, 1, 0) - edge) < 1e-15);
  CHECK(std::abs(jinc_tap(spec, 1, 1) - corner) < 1e-15);
  CHECK(std::abs(edge - 0.1417) < 1e-4);
  CHECK(std::abs(corner - 0.0977) < 1e-4);
}

TEST_CASE("kaiser_weight") {
  CHECK(kaiser_weight(1.0, 0, 2.0) == 1.0);
  CHECK(kaiser_weight(0.0, 1, 2.0) == 1.0);
  CHECK(kaiser_weight(1.0, 1, 2.0) == doctest::Approx(static_cast<double>(1 / oracle::i0_series(1.0L))).epsilon(1e-14));
  CHECK(std::abs(kaiser_weight(1.0, 1, 2.0) - 0.7899) < 1e-4);
  CHECK(kaiser_weight(1.0, 2, 2.0) == 0.0);
  CHECK(kaiser_weight(600.0, 0, 2.0) == 1.0);
  CHECK(std::isfinite(kaiser_weight(1000.0, 1, 4.0)));
  CHECK_THROWS_AS(kaiser_weight(1.0, 0, 0.0), DomainError);
}

TEST_CASE("design_kernel matches the closed-form oracle") {
  for (double beta : {0.0, 1.0, 2.0, 3.7}) {
    for (bool norm : {false, true}) {
      for (int size : {1, 3, 5, 7}) {
        FilterSpec spec = grid_spec(beta, norm);
        spec.kernel_size = size;
        const Kernel2D k = design_kernel(spec);
        const auto expected = oracle::kernel_taps(spec.cutoff, size, beta, norm);
        REQUIRE(k.taps().size() == expected.size());
        for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(k.taps()[i] - expected[i]) < 1e-14);
      }
    }
  }
}

TEST_CASE("unnormalized beta = 0 sum") {
  const auto taps = oracle::kernel_taps(std::numbers::pi / 2, 3, 0.0, false);
  double oracle_sum = 0;
  for (double t : taps) oracle_sum += t;
  CHECK(std::abs(oracle_sum - 1.154) < 1e-3);
  CHECK(std::abs(design_kernel(grid_spec(0, false)).sum() - oracle_sum) < 1e-3);
}

TEST_CASE("grid kernels: symmetry and normalization") {
  for (double beta : {0.0, 1.0, 2.0}) {
    for (bool norm : {false, true}) {
      const Kernel2D k = design_kernel(grid_spec(beta, norm));
      for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
          CHECK(k.tap(a, b) == k.tap(-a, b));
          CHECK(k.tap(a, b) == k.tap(a, -b));
          CHECK(k.tap(a, b) == k.tap(b, a));
        }
      }
      if (norm) CHECK(std::abs(k.sum() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("Kaiser windowing concentrates the normalized kernel") {
  const double c0 = design_kernel(grid_spec(0, true)).tap(0, 0);
  const double c2 = design_kernel(grid_spec(2, true)).tap(0, 0);
  CHECK(c2 > c0);
}

TEST_CASE("unnormalized off-centre taps shrink with beta") {
  const Kernel2D k0 = design_kernel(grid_spec(0, false));
  const Kernel2D k1 = design_kernel(grid_spec(1, false));
  const Kernel2D k2 = design_kernel(grid_spec(2, false));
  for (auto [a, b] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}, std::pair{-1, 1}}) {
    CHECK(std::abs(k1.tap(a, b)) <= std::abs(k0.tap(a, b)));
    CHECK(std::abs(k2.tap(a, b)) <= std::abs(k1.tap(a, b)));
  }
  CHECK(k2.tap(0, 0) == k0.tap(0, 0));
}

TEST_CASE("grid kernels pass DC and attenuate (pi, pi)") {
  for (double beta : {0.0, 1.0, 2.0}) {
    for (bool norm : {false, true}) {
      const SpectrumGrid h = freq_response(design_kernel(grid_spec(beta, norm)), 16);
      CHECK(h.magnitude(-8, -8) < h.magnitude(0, 0));
    }
  }
}

TEST_CASE("invalid specs") {
  FilterSpec s;
  s.kernel_size = 4;
  CHECK_THROWS_AS(design_kernel(s), DomainError);
  s = FilterSpec{};
  s.cutoff = 0.0;
  CHECK_THROWS_AS(design_kernel(s), DomainError);
  s.cutoff = 3.2;
  CHECK_THROWS_AS(design_kernel(s), DomainError);
  s = FilterSpec{};
  s.kaiser_beta = -1;
  CHECK_THROWS_AS(design_kernel(s), DomainError);
  s = FilterSpec{};
  s.cutoff = std::numbers::pi;
  CHECK_NOTHROW(design_kernel(s));
}

TEST_CASE("normalization is always possible") {
  // Unwindowed and windowed tap sums stay positive across the valid domain.
  for (int size = 1; size <= 21; size += 2) {
    for (double cutoff = 0.05; cutoff <= std::numbers::pi; cutoff += 0.05) {
      for (double beta : {0.0, 2.0, 8.0}) {
        FilterSpec s;
        s.cutoff = cutoff;
        s.kernel_size = size;
        s.kaiser_beta = beta;
        CHECK(design_kernel(s).sum() > 0);
        s.normalized = true;
        CHECK(std::abs(design_kernel(s).sum() - 1) <= 1e-12);
      }
    }
  }
  FilterSpec one;
  one.kernel_size = 1;
  one.normalized = true;
  CHECK(design_kernel(one) == Kernel2D::identity());
}

TEST_CASE("Kernel2D construction checks") {
  CHECK_THROWS_AS(Kernel2D(2, {1, 1, 1, 1}), ShapeError);
  CHECK_THROWS_AS(Kernel2D(3, {1, 2, 3}), ShapeError);
  CHECK_THROWS_AS(Kernel2D(3, {0, 1, 0, 2, 5, 1, 0, 1, 0}), DomainError);
  CHECK_THROWS_AS(Kernel2D(1, {NAN}), DomainError);
  CHECK(Kernel2D::identity().tap(0, 0) == 1.0);
}

TEST_CASE("kernel text format") {
  const Kernel2D k = design_kernel(grid_spec(1, true));
  const std::string text = format_kernel_text(k);
  // Three rows of three space-separated taps.
  int lines = 0, spaces = 0;
  for (char ch : text) {
    lines += ch == '\n';
    spaces += ch == ' ';
  }
  CHECK(lines == 3);
  CHECK(spaces == 6);
  CHECK(text.find("  ") == std::string::npos);
  CHECK(parse_kernel_text(text) == k);

  CHECK(parse_kernel_text("1\n") == Kernel2D::identity());
  CHECK_THROWS_AS(parse_kernel_text(""), ParseError);
  CHECK_THROWS_AS(parse_kernel_text("1 2\n3 4\n"), ParseError);
  CHECK_THROWS_AS(parse_kernel_text("1 0 1\n0 1\n1 0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_kernel_text("1 x 1\n"), ParseError);
  CHECK_THROWS_AS(parse_kernel_text("0 1 0\n1 5 2\n0 1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_kernel_text("nan\n"), ParseError);
}
