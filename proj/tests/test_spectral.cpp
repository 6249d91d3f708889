#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <sstream>
#include <string>

#include "aliasfree/errors.hpp"
#include "aliasfree/filter_design.hpp"
#include "aliasfree/pipeline.hpp"
#include "aliasfree/spectral.hpp"
#include "oracles.hpp"

using namespace aliasfree;

namespace {

constexpr double kPi = std::numbers::pi;

Kernel2D grid_kernel(double beta, bool normalized) {
  FilterSpec s;
  s.kaiser_beta = beta;
  s.normalized = normalized;
  return design_kernel(s);
}

}  // namespace

TEST_CASE("dft2 matches the brute-force DFT") {
  const Image img = oracle::random_image({1, 8, 8}, 1);
  const auto expect = oracle::dft_bruteforce(img);
  const SpectrumGrid got = dft2(img);
  for (int k1 = 0; k1 < 8; ++k1)
    for (int k2 = 0; k2 < 8; ++k2) {
      const int s1 = k1 >= 4 ? k1 - 8 : k1, s2 = k2 >= 4 ? k2 - 8 : k2;
      CHECK(std::abs(got.at(s1, s2) - expect[k1 * 8 + k2]) <= 1e-12);
    }
}

TEST_CASE("dft2 examples") {
  const SpectrumGrid c = dft2(Image({1, 8, 8}, 0.5));
  CHECK(std::abs(c.at(0, 0) - std::complex<double>(32, 0)) <= 1e-10);
  for (int k1 = -4; k1 < 4; ++k1)
    for (int k2 = -4; k2 < 4; ++k2)
      if (k1 != 0 || k2 != 0) CHECK(std::abs(c.at(k1, k2)) <= 1e-10);

  Image delta({1, 8, 8}, 0.0);
  delta(0, 0, 0) = 1.0;
  const SpectrumGrid d = dft2(delta);
  for (int k1 = -4; k1 < 4; ++k1)
    for (int k2 = -4; k2 < 4; ++k2) CHECK(d.magnitude(k1, k2) == doctest::Approx(1.0).epsilon(1e-12));

  Image cosine({1, 16, 16});
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) cosine(0, y, x) = std::cos(2 * kPi * (3 * y + 2 * x) / 16.0);
  const SpectrumGrid cs = dft2(cosine);
  CHECK(cs.magnitude(3, 2) == doctest::Approx(128.0));
  CHECK(cs.magnitude(-3, -2) == doctest::Approx(128.0));
  CHECK(cs.energy() == doctest::Approx(2 * 128.0 * 128.0));

  CHECK_THROWS_AS(dft2(Image({1, 4, 6})), ShapeError);
}

TEST_CASE("Parseval and conjugate symmetry") {
  for (unsigned seed = 0; seed < 3; ++seed) {
    const Image img = oracle::random_image({1, 32, 32}, seed);
    const SpectrumGrid x = dft2(img);
    const double n2 = 32.0 * 32.0;
    CHECK(std::abs(x.energy() - n2 * l2_norm(img) * l2_norm(img)) <= 1e-8 * x.energy());
    for (int k1 = -15; k1 < 16; ++k1)
      for (int k2 = -15; k2 < 16; ++k2) CHECK(std::abs(x.at(k1, k2) - std::conj(x.at(-k1, -k2))) <= 1e-9);
  }
}

TEST_CASE("inverse DFT round trip") {
  const Image img = oracle::random_image({1, 16, 16}, 4);
  CHECK(max_abs_difference(idft2_real(dft2(img)), img) <= 1e-12);
}

TEST_CASE("freq_response") {
  for (double beta : {0.0, 1.0, 2.0}) {
    for (bool norm : {false, true}) {
      const Kernel2D k = grid_kernel(beta, norm);
      const SpectrumGrid h = freq_response(k, 16);
      CHECK(h.at(0, 0).real() == doctest::Approx(k.sum()).epsilon(1e-14));
      if (norm) CHECK(std::abs(h.at(0, 0).real() - 1.0) <= 1e-12);
      double alt = 0;
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) alt += k.tap(a, b) * ((a + b) % 2 == 0 ? 1 : -1);
      CHECK(h.at(-8, -8).real() == doctest::Approx(alt).epsilon(1e-12));
      CHECK(std::abs(h.at(3, 5).imag()) <= 1e-12);
    }
  }
  CHECK(freq_response(grid_kernel(1, true), 16).magnitude(-8, -8) <
        freq_response(grid_kernel(0, true), 16).magnitude(-8, -8));
  CHECK_THROWS_AS(freq_response(grid_kernel(0, true), 2), ShapeError);
}

TEST_CASE("alias_energy") {
  CHECK(alias_energy(Image({1, 16, 16}, 0.7), kPi / 2) <= 1e-20);
  CHECK(alias_energy(Image({1, 16, 16}, 0.0), kPi / 2) == 0.0);

  Image checker({1, 16, 16});
  for (int y = 0; y < 16; ++y)
    for (int x = 0; x < 16; ++x) checker(0, y, x) = (x + y) % 2 == 0 ? 1 : -1;
  CHECK(alias_energy(checker, kPi / 2) == doctest::Approx(1.0).epsilon(1e-14));

  for (std::uint64_t seed : kCorpusSeeds) CHECK(alias_energy(band_limited_image(64, seed), kPi / 2) <= 1e-10);

  const Image noise = oracle::random_image({2, 16, 16}, 5);
  double prev = 1.0;
  for (double cut = 0.0; cut <= kPi; cut += kPi / 20) {
    const double e = alias_energy(noise, cut);
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
    CHECK(e <= prev + 1e-15);
    prev = e;
  }
}

TEST_CASE("band-limited corpus") {
  const Image a = band_limited_image(64, 11);
  CHECK(a == band_limited_image(64, 11));
  CHECK(a != band_limited_image(64, 22));
  double peak = 0;
  for (double v : a.values()) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(alias_energy(a, 0.8 * kPi / 2) <= 1e-10);
  CHECK(band_limited_image(16, 3, 0.8 * kPi / 2, 3).shape() == Shape{3, 16, 16});
}

TEST_CASE("oversampled reference of a band-limited linear map is the input") {
  // ReLU acts as the identity on a positive image, so the ideal is the
  // low-passed input itself.
  Image x = band_limited_image(32, 44);
  for (double& v : x.values()) v += 2.0;
  const Image ideal = oversampled_reference(x, Activation::ReLU, 4, kPi / 2);
  CHECK(max_abs_difference(ideal, x) <= 1e-9);
  CHECK(high_band_excess(x, ideal, kPi / 2) <= 1e-20);
}

TEST_CASE("pipeline names") {
  const PipelineConfig b = PipelineConfig::parse("B-2N");
  CHECK(b.arch == Architecture::B);
  REQUIRE(b.filter.has_value());
  CHECK(b.filter->kaiser_beta == 2.0);
  CHECK(b.filter->normalized);
  CHECK(b.name() == "B-2N");
  CHECK(PipelineConfig::parse("Config D-1").name() == "D-1");
  CHECK(PipelineConfig::parse("A").name() == "A");
  CHECK_FALSE(PipelineConfig::parse("A").filter.has_value());
  CHECK(PipelineConfig::parse("C-0N").name() == "C-0N");
  CHECK_THROWS(PipelineConfig::parse("A-1N"));
  CHECK_THROWS(PipelineConfig::parse("E-1N"));
  CHECK_THROWS(PipelineConfig::parse("B"));
  CHECK_THROWS(PipelineConfig::parse("B-xN"));
}

TEST_CASE("equivariance error") {
  const Image x = band_limited_image(32, 55);
  for (const char* name : {"A", "B-1N", "C-1N", "D-1N"}) {
    const PipelineConfig cfg = PipelineConfig::parse(name);
    CHECK(equivariance_error(cfg, x, 0.0) <= 1e-12);
    CHECK(run_pipeline(cfg, x).shape() == x.shape());
  }

  // Constants: A and C map them to constants exactly. B and D leave the
  // 2x2 phase pattern of gains 4 S_p, so the error is bounded by the spread
  // (max S - min S) / min S.
  for (const char* name : {"A", "C-1N"})
    CHECK(equivariance_error(PipelineConfig::parse(name), Image({1, 16, 16}, 0.5), 0.7) <= 1e-12);
  for (const char* name : {"B-0N", "B-1N", "D-1N", "D-2N"}) {
    const PipelineConfig cfg = PipelineConfig::parse(name);
    const Kernel2D k = design_kernel(*cfg.filter);
    const auto s = oracle::phase_sums({k.taps().begin(), k.taps().end()}, 3);
    const double lo = *std::min_element(s.begin(), s.end()), hi = *std::max_element(s.begin(), s.end());
    CHECK(equivariance_error(cfg, Image({1, 16, 16}, 0.5), 0.7) <= (hi - lo) / lo);
  }
}

TEST_CASE("D-1N is more equivariant than A at non-grid angles") {
  const PipelineConfig a = PipelineConfig::parse("A");
  const PipelineConfig d = PipelineConfig::parse("D-1N");
  for (std::uint64_t seed : kCorpusSeeds) {
    const Image x = band_limited_image(64, seed);
    for (double phi : {kPi / 7, kPi / 4}) CHECK(equivariance_error(d, x, phi) < equivariance_error(a, x, phi));
  }
}

TEST_CASE("spectrum CSV") {
  std::ostringstream os;
  write_spectrum_csv(os, dft2(Image({1, 2, 2}, 1.0)));
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k1,k2,magnitude");
  const int expect_k[4][2] = {{-1, -1}, {-1, 0}, {0, -1}, {0, 0}};
  for (const auto& k : expect_k) {
    REQUIRE(std::getline(in, line));
    int k1 = 0, k2 = 0;
    double mag = -1;
    REQUIRE(std::sscanf(line.c_str(), "%d,%d,%lf", &k1, &k2, &mag) == 3);
    CHECK(k1 == k[0]);
    CHECK(k2 == k[1]);
    CHECK(mag == doctest::Approx(k1 == 0 && k2 == 0 ? 4.0 : 0.0));
  }
  CHECK_FALSE(std::getline(in, line));
}
