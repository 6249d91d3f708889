#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstring>
#include <memory>
#include <numbers>
#include <string>

#include "aliasfree/activation.hpp"
#include "aliasfree/diffusion.hpp"
#include "aliasfree/errors.hpp"
#include "aliasfree/filter_design.hpp"
#include "aliasfree/image_io.hpp"
#include "aliasfree/pipeline.hpp"
#include "aliasfree/resampling.hpp"
#include "aliasfree/rng.hpp"
#include "aliasfree/rotation.hpp"
#include "aliasfree/special_functions.hpp"
#include "aliasfree/spectral.hpp"

namespace py = pybind11;
using namespace aliasfree;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// (H, W) arrays become one-channel images; (C, H, W) map directly.
Image to_image(const Array& a) {
  Shape shape;
  if (a.ndim() == 2) {
    shape = {1, static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1))};
  } else if (a.ndim() == 3) {
    shape = {static_cast<int>(a.shape(0)), static_cast<int>(a.shape(1)), static_cast<int>(a.shape(2))};
  } else {
    throw ShapeError("expected a 2-D (H, W) or 3-D (C, H, W) array");
  }
  std::vector<double> values(a.data(), a.data() + a.size());
  return Image(shape, std::move(values));
}

Array to_array(const Image& img) {
  Array out({img.channels(), img.height(), img.width()});
  std::memcpy(out.mutable_data(), img.values().data(), img.size() * sizeof(double));
  return out;
}

Kernel2D to_kernel(const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw ShapeError("kernel must be a square 2-D array");
  return Kernel2D(static_cast<int>(a.shape(0)), std::vector<double>(a.data(), a.data() + a.size()));
}

Array kernel_array(const Kernel2D& k) {
  Array out({k.size(), k.size()});
  std::memcpy(out.mutable_data(), k.taps().data(), k.taps().size() * sizeof(double));
  return out;
}

PaddingMode padding_of(const std::string& name) {
  if (name == "reflect") return PaddingMode::Reflect;
  if (name == "zero") return PaddingMode::Zero;
  throw DomainError("padding must be 'reflect' or 'zero'");
}

Activation activation_of(const std::string& name) {
  if (auto a = parse_activation(name)) return *a;
  throw DomainError("activation must be 'relu' or 'gelu'");
}

FillMode fill_of(const std::string& name) {
  if (auto f = parse_fill_mode(name)) return *f;
  throw DomainError("fill must be 'replicate' or 'zero'");
}

SigmaMode sigma_of(const std::string& name) {
  if (name == "beta") return SigmaMode::Beta;
  if (name == "zero") return SigmaMode::Zero;
  throw DomainError("sigma must be 'beta' or 'zero'");
}

struct Schedule {
  int steps;
  double beta_start;
  double beta_end;
  std::string sigma;
  NoiseSchedule build() const { return linear_schedule(steps, beta_start, beta_end, sigma_of(sigma)); }
};

// "zero", "constant" (value) or "gaussian" (mu, sigma0).
std::unique_ptr<Denoiser> make_denoiser(const std::string& kind, double value, double mu, double sigma0,
                                        const Shape& shape, const NoiseSchedule& sched) {
  if (kind == "zero") return std::make_unique<ZeroDenoiser>();
  if (kind == "constant") return std::make_unique<ConstantDenoiser>(value);
  if (kind == "gaussian") return std::make_unique<AnalyticGaussianDenoiser>(GaussianDataSpec{mu, sigma0, shape}, sched);
  throw DomainError("denoiser must be 'zero', 'constant' or 'gaussian'");
}

Shape shape_of(const std::tuple<int, int, int>& s) { return {std::get<0>(s), std::get<1>(s), std::get<2>(s)}; }

}  // namespace

PYBIND11_MODULE(_aliasfree, m) {
  m.doc() = "Alias-free resampling filters, spectral measurements and diffusion samplers";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DesignError>(m, "DesignError", PyExc_RuntimeError);

  m.def("bessel_j1", &bessel_j1, py::arg("x"));
  m.def("bessel_i0", &bessel_i0, py::arg("x"));
  m.def("jinc", &jinc, py::arg("x"));

  m.def(
      "design_kernel",
      [](double cutoff, int size, double beta, bool normalized) {
        return kernel_array(design_kernel(FilterSpec{cutoff, size, beta, normalized}));
      },
      py::arg("cutoff") = std::numbers::pi / 2, py::arg("size") = 3, py::arg("beta") = 0.0,
      py::arg("normalized") = false, "Windowed jinc low-pass kernel as a (size, size) array.");
  m.def("kaiser_weight", &kaiser_weight, py::arg("beta"), py::arg("n"), py::arg("extent"));

  m.def(
      "convolve2d",
      [](const Array& img, const Array& kernel, const std::string& padding) {
        return to_array(convolve2d(to_image(img), to_kernel(kernel), padding_of(padding)));
      },
      py::arg("img"), py::arg("kernel"), py::arg("padding") = "reflect");
  m.def(
      "downsample2x_naive", [](const Array& img) { return to_array(downsample2x_naive(to_image(img))); },
      py::arg("img"));
  m.def(
      "upsample2x_naive", [](const Array& img) { return to_array(upsample2x_naive(to_image(img))); },
      py::arg("img"));
  m.def(
      "downsample2x_af",
      [](const Array& img, const Array& kernel, const std::string& padding) {
        return to_array(downsample2x_af(to_image(img), to_kernel(kernel), padding_of(padding)));
      },
      py::arg("img"), py::arg("kernel"), py::arg("padding") = "reflect");
  m.def(
      "upsample2x_af",
      [](const Array& img, const Array& kernel, const std::string& padding) {
        return to_array(upsample2x_af(to_image(img), to_kernel(kernel), padding_of(padding)));
      },
      py::arg("img"), py::arg("kernel"), py::arg("padding") = "reflect");

  m.def(
      "apply_pointwise",
      [](const Array& img, const std::string& act) { return to_array(apply_pointwise(to_image(img), activation_of(act))); },
      py::arg("img"), py::arg("act") = "relu");
  m.def(
      "wrapped_activation",
      [](const Array& img, const std::string& act, const Array& kernel, const std::string& padding) {
        return to_array(wrapped_activation(to_image(img), activation_of(act), to_kernel(kernel), padding_of(padding)));
      },
      py::arg("img"), py::arg("act"), py::arg("kernel"), py::arg("padding") = "reflect");

  m.def(
      "rotate",
      [](const Array& img, double phi, const std::string& fill) {
        return to_array(rotate(to_image(img), RotationParams{phi, fill_of(fill)}));
      },
      py::arg("img"), py::arg("phi"), py::arg("fill") = "replicate");

  m.def(
      "dft2",
      [](const Array& img) {
        const SpectrumGrid g = dft2(to_image(img));
        const int n = g.n();
        py::array_t<std::complex<double>> out({n, n});
        auto* p = out.mutable_data();
        for (int k1 = 0; k1 < n; ++k1)
          for (int k2 = 0; k2 < n; ++k2) p[k1 * n + k2] = g.at(k1 - (k1 >= n - n / 2 ? n : 0), k2 - (k2 >= n - n / 2 ? n : 0));
        return out;
      },
      py::arg("img"), "Unnormalized 2-D DFT of channel 0 in natural FFT order.");
  m.def(
      "alias_energy", [](const Array& img, double cutoff) { return alias_energy(to_image(img), cutoff); },
      py::arg("img"), py::arg("cutoff") = std::numbers::pi / 2);
  m.def(
      "band_limited_image",
      [](int n, std::uint64_t seed, double band_edge, int channels) {
        return to_array(band_limited_image(n, seed, band_edge, channels));
      },
      py::arg("n"), py::arg("seed"), py::arg("band_edge") = 0.8 * std::numbers::pi / 2, py::arg("channels") = 1);
  m.attr("CORPUS_SEEDS") = py::make_tuple(11, 22, 33, 44, 55);
  m.def(
      "run_pipeline",
      [](const std::string& config, const Array& img) {
        return to_array(run_pipeline(PipelineConfig::parse(config), to_image(img)));
      },
      py::arg("config"), py::arg("img"));
  m.def(
      "equivariance_error",
      [](const std::string& config, const Array& img, double phi) {
        return equivariance_error(PipelineConfig::parse(config), to_image(img), phi);
      },
      py::arg("config"), py::arg("img"), py::arg("phi"));

  py::class_<Schedule>(m, "Schedule")
      .def(py::init<int, double, double, std::string>(), py::arg("steps") = 1000, py::arg("beta_start") = 1e-4,
           py::arg("beta_end") = 0.02, py::arg("sigma") = "beta")
      .def("alpha_bar", [](const Schedule& s) {
        const NoiseSchedule ns = s.build();
        std::vector<double> v;
        for (int t = 1; t <= ns.steps(); ++t) v.push_back(ns.alpha_bar(t));
        return v;
      });

  m.def(
      "sample",
      [](const Schedule& sched, std::tuple<int, int, int> shape, std::uint64_t seed, const std::string& denoiser,
         double value, double mu, double sigma0, double phi, const std::string& fill) {
        const NoiseSchedule ns = sched.build();
        const Shape s = shape_of(shape);
        const auto den = make_denoiser(denoiser, value, mu, sigma0, s, ns);
        const FillMode f = fill_of(fill);
        Rng rng(seed);
        Image out;
        {
          py::gil_scoped_release release;
          out = phi == 0.0 ? sample_classical(*den, ns, s, rng) : sample_rotated(*den, ns, s, phi, rng, f);
        }
        return to_array(out);
      },
      py::arg("schedule"), py::arg("shape"), py::arg("seed") = 0, py::arg("denoiser") = "zero",
      py::arg("value") = 0.0, py::arg("mu") = 0.0, py::arg("sigma0") = 1.0, py::arg("phi") = 0.0,
      py::arg("fill") = "replicate",
      "Reverse diffusion from x_T ~ N(0, I); rotated by phi / T after every step when phi != 0.");
  m.def(
      "training_loss",
      [](const Schedule& sched, double mu, double sigma0, std::tuple<int, int, int> shape, int n_draws,
         std::uint64_t seed, double offset) {
        const NoiseSchedule ns = sched.build();
        const GaussianDataSpec data{mu, sigma0, shape_of(shape)};
        const AnalyticGaussianDenoiser best(data, ns);
        const OffsetDenoiser den(best, offset);
        Rng rng(seed);
        return training_loss(den, data, ns, n_draws, rng);
      },
      py::arg("schedule"), py::arg("mu"), py::arg("sigma0"), py::arg("shape"), py::arg("n_draws"),
      py::arg("seed") = 0, py::arg("offset") = 0.0,
      "Monte-Carlo loss of the analytic Gaussian denoiser plus a constant offset.");

  m.def(
      "read_raster",
      [](const py::bytes& data) {
        const std::string s = data;
        return to_array(read_raster(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size())));
      },
      py::arg("data"));
  m.def(
      "write_raster",
      [](const Array& img) {
        const Image i = to_image(img);
        const auto bytes = write_raster(i, raster_format_for(i));
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("img"), "P5 for one channel, P6 for three.");
}
