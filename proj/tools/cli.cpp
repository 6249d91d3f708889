#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "aliasfree/activation.hpp"
#include "aliasfree/diffusion.hpp"
#include "aliasfree/errors.hpp"
#include "aliasfree/filter_design.hpp"
#include "aliasfree/image_io.hpp"
#include "aliasfree/pipeline.hpp"
#include "aliasfree/resampling.hpp"
#include "aliasfree/rotation.hpp"
#include "aliasfree/spectral.hpp"

namespace aliasfree::cli {

namespace {

// Bad flag values discovered after CLI11 has accepted the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out;
};

struct FilterOptions {
  double beta = 0.0;
  bool normalized = false;
  int size = 3;
  std::string cutoff = "half-pi";
  std::string kernel_file;
  std::string padding = "reflect";
};

double parse_number(const std::string& text, const char* flag) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw UsageError(std::string(flag) + ": expected a number, got '" + text + "'");
  }
  return v;
}

double parse_angle(const std::string& text, const char* flag) {
  if (text == "half-pi") return std::numbers::pi / 2;
  if (text == "pi") return std::numbers::pi;
  return parse_number(text, flag);
}

void add_filter_options(CLI::App* sub, FilterOptions& f, bool with_padding) {
  sub->add_option("--beta", f.beta, "Kaiser window beta")->check(CLI::NonNegativeNumber);
  sub->add_flag("--normalized", f.normalized, "Scale taps to sum to one");
  sub->add_option("--size", f.size, "Odd kernel size");
  sub->add_option("--cutoff", f.cutoff, "Cutoff in radians/sample, or 'half-pi'");
  sub->add_option("--kernel", f.kernel_file, "Read taps from a kernel text file instead of designing them");
  if (with_padding) sub->add_option("--padding", f.padding, "reflect|zero")->check(CLI::IsMember({"reflect", "zero"}));
}

Kernel2D make_kernel(const FilterOptions& f) {
  if (!f.kernel_file.empty()) {
    std::ifstream in(f.kernel_file);
    if (!in) throw std::runtime_error("cannot open kernel file " + f.kernel_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_kernel_text(ss.str());
  }
  FilterSpec spec;
  spec.cutoff = parse_angle(f.cutoff, "--cutoff");
  spec.kernel_size = f.size;
  spec.kaiser_beta = f.beta;
  spec.normalized = f.normalized;
  try {
    spec.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return design_kernel(spec);
}

PaddingMode make_padding(const FilterOptions& f) {
  return f.padding == "zero" ? PaddingMode::Zero : PaddingMode::Reflect;
}

void emit_text(const GlobalOptions& g, const std::string& text, std::ostream& out) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + g.out);
  file << text;
}

void require_out(const GlobalOptions& g, const char* sub) {
  if (g.out.empty()) throw UsageError(std::string(sub) + " writes an image and needs --out");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// "zero", "constant:value=V" (or "constant:V"), "gaussian:mu=M,sigma0=S".
struct DenoiserChoice {
  std::string kind = "zero";
  double value = 0.0;
  GaussianDataSpec data;
};

DenoiserChoice parse_denoiser(const std::string& text) {
  DenoiserChoice choice;
  const auto colon = text.find(':');
  choice.kind = text.substr(0, colon);
  std::string params = colon == std::string::npos ? "" : text.substr(colon + 1);

  bool have_mu = false;
  bool have_sigma = false;
  std::stringstream ss(params);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    const std::string key = eq == std::string::npos ? "value" : item.substr(0, eq);
    const std::string val = eq == std::string::npos ? item : item.substr(eq + 1);
    const double v = parse_number(val, "--denoiser");
    if (choice.kind == "constant" && key == "value") {
      choice.value = v;
    } else if (choice.kind == "gaussian" && key == "mu") {
      choice.data.mean = v;
      have_mu = true;
    } else if (choice.kind == "gaussian" && key == "sigma0") {
      choice.data.stddev = v;
      have_sigma = true;
    } else {
      throw UsageError("--denoiser: unknown parameter '" + key + "' for '" + choice.kind + "'");
    }
  }
  if (choice.kind == "gaussian") {
    if (!have_mu || !have_sigma) throw UsageError("--denoiser gaussian needs mu=<m>,sigma0=<s>");
    if (!(choice.data.stddev > 0.0)) throw UsageError("--denoiser gaussian needs sigma0 > 0");
  } else if (choice.kind != "zero" && choice.kind != "constant") {
    throw UsageError("--denoiser: unknown kind '" + choice.kind + "' (zero, constant, gaussian)");
  }
  return choice;
}

std::string indexed_path(const std::string& path, int index) {
  const std::filesystem::path p(path);
  std::filesystem::path name = p.stem();
  name += "_" + std::to_string(index);
  name += p.extension();
  return (p.parent_path() / name).string();
}

struct SampleOptions {
  std::string config = "classical";
  int steps = 1000;
  double beta_start = 1e-4;
  double beta_end = 0.02;
  std::string sigma = "beta";
  std::string shape = "1x8x8";
  std::string denoiser = "zero";
  int count = 1;
  std::string phi = "0";
  std::string fill = "replicate";
  int threads = 0;
};

void run_sample(const SampleOptions& o, const GlobalOptions& g) {
  require_out(g, "sample");
  Shape shape;
  try {
    shape = parse_shape(o.shape);
  } catch (const ShapeError& e) {
    throw UsageError(std::string("--shape: ") + e.what());
  }
  if (shape.channels != 1 && shape.channels != 3) throw UsageError("--shape: raster output needs 1 or 3 channels");
  if (o.count < 1) throw UsageError("--n must be >= 1");
  const double phi = parse_angle(o.phi, "--phi");
  const SigmaMode sigma = o.sigma == "zero" ? SigmaMode::Zero : SigmaMode::Beta;
  std::optional<NoiseSchedule> sched;
  try {
    sched = linear_schedule(o.steps, o.beta_start, o.beta_end, sigma);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }

  DenoiserChoice choice = parse_denoiser(o.denoiser);
  choice.data.shape = shape;
  std::unique_ptr<Denoiser> denoiser;
  if (choice.kind == "zero") {
    denoiser = std::make_unique<ZeroDenoiser>();
  } else if (choice.kind == "constant") {
    denoiser = std::make_unique<ConstantDenoiser>(choice.value);
  } else {
    denoiser = std::make_unique<AnalyticGaussianDenoiser>(choice.data, *sched);
  }
  const FillMode fill = *parse_fill_mode(o.fill);

  // Trajectory i uses the sub-stream seed ^ i, so scheduling does not affect
  // the result.
  std::vector<std::optional<Image>> results(static_cast<std::size_t>(o.count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < o.count; i = next++) {
      Rng rng = Rng::for_trajectory(g.seed, static_cast<std::uint64_t>(i));
      results[static_cast<std::size_t>(i)] = o.config == "rotated"
                                                 ? sample_rotated(*denoiser, *sched, shape, phi, rng, fill)
                                                 : sample_classical(*denoiser, *sched, shape, rng);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int n_threads = std::min(o.count, o.threads > 0 ? o.threads : static_cast<int>(hw));
  std::vector<std::jthread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (int i = 0; i < o.count; ++i) {
    write_raster_file(o.count == 1 ? g.out : indexed_path(g.out, i), *results[static_cast<std::size_t>(i)]);
  }
}

struct AnalyzeOptions {
  std::string report = "alias";
  std::string pipeline = "A";
  std::string config;
  std::string act = "relu";
  std::string input;
  int corpus_size = 64;
  std::string phi = "0.44879895051282759";  // pi / 7
  std::string cutoff = "half-pi";
};

std::string run_analyze(const AnalyzeOptions& o, const FilterOptions& f, const GlobalOptions& g) {
  PipelineConfig config;
  try {
    if (!o.config.empty()) {
      config = PipelineConfig::parse(o.config);
    } else {
      config.arch = static_cast<Architecture>(o.pipeline[0] - 'A');
      if (config.arch != Architecture::A) {
        FilterSpec spec;
        spec.kaiser_beta = f.beta;
        spec.normalized = f.normalized;
        config.filter = spec;
      }
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  config.activation = *parse_activation(o.act);

  const Image img = o.input.empty() ? band_limited_image(o.corpus_size, g.seed) : read_raster_file(o.input);
  std::string report = "metric,value\nconfig," + config.name() + "\n";
  if (o.report == "alias") {
    const double cutoff = parse_angle(o.cutoff, "--cutoff");
    const Image processed = run_pipeline(config, img);
    report += "cutoff," + fmt(cutoff) + "\n";
    report += "input_alias_energy," + fmt(alias_energy(img, cutoff)) + "\n";
    report += "output_alias_energy," + fmt(alias_energy(processed, cutoff)) + "\n";
    report += "relative_l2_change," + fmt(relative_l2(processed, img)) + "\n";
  } else {
    const double phi = parse_angle(o.phi, "--phi");
    report += "phi," + fmt(phi) + "\n";
    report += "equivariance_error," + fmt(equivariance_error(config, img, phi)) + "\n";
  }
  return report;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Alias-free resampling filters, spectral measurements and diffusion samplers", "aliasfree"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed (all stochastic output is a function of it)");
  app.add_option("--out", g.out, "Output path (stdout for text output when omitted)");

  FilterOptions f_kernel, f_freq, f_resample, f_activate, f_analyze;

  auto* kernel = app.add_subcommand("kernel", "Design an anti-aliasing kernel and write it as text");
  add_filter_options(kernel, f_kernel, false);

  int freq_n = 64;
  auto* freq = app.add_subcommand("freq", "Kernel frequency response magnitude as CSV");
  add_filter_options(freq, f_freq, false);
  freq->add_option("--n", freq_n, "DFT grid size");

  std::string input, mode = "af", dir;
  auto* resample = app.add_subcommand("resample", "2x up- or downsampling of a PGM/PPM image");
  resample->add_option("--in", input, "Input image")->required();
  resample->add_option("--mode", mode, "naive|af")->check(CLI::IsMember({"naive", "af"}));
  resample->add_option("--dir", dir, "up|down")->required()->check(CLI::IsMember({"up", "down"}));
  add_filter_options(resample, f_resample, true);

  std::string act = "relu";
  bool wrapped = false;
  auto* activate = app.add_subcommand("activate", "Pointwise or alias-free wrapped nonlinearity");
  activate->add_option("--in", input, "Input image")->required();
  activate->add_option("--act", act, "relu|gelu")->check(CLI::IsMember({"relu", "gelu"}));
  activate->add_flag("--wrapped", wrapped, "Apply at twice the rate between alias-free resampling");
  add_filter_options(activate, f_activate, true);

  std::string phi_text, fill = "replicate";
  auto* rotate_cmd = app.add_subcommand("rotate", "Rotate an image about its centre");
  rotate_cmd->add_option("--in", input, "Input image")->required();
  rotate_cmd->add_option("--phi", phi_text, "Angle in radians, counter-clockwise")->required();
  rotate_cmd->add_option("--fill", fill, "replicate|zero")->check(CLI::IsMember({"replicate", "zero"}));

  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "Run the reverse diffusion process and write PGM/PPM samples");
  sample->add_option("--config", so.config, "classical|rotated")->check(CLI::IsMember({"classical", "rotated"}));
  sample->add_option("--T", so.steps, "Number of diffusion steps");
  sample->add_option("--beta-start", so.beta_start, "beta at t = 1");
  sample->add_option("--beta-end", so.beta_end, "beta at t = T");
  sample->add_option("--sigma", so.sigma, "beta|zero")->check(CLI::IsMember({"beta", "zero"}));
  sample->add_option("--shape", so.shape, "CxHxW");
  sample->add_option("--denoiser", so.denoiser, "zero | constant:value=V | gaussian:mu=M,sigma0=S");
  sample->add_option("--n", so.count, "Number of samples");
  sample->add_option("--phi", so.phi, "Total rotation for --config rotated");
  sample->add_option("--fill", so.fill, "replicate|zero")->check(CLI::IsMember({"replicate", "zero"}));
  sample->add_option("--threads", so.threads, "Worker threads (0 = hardware concurrency)");

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "Alias-energy or equivariance report for a pipeline configuration");
  analyze->add_option("--report", ao.report, "alias|equivariance")->check(CLI::IsMember({"alias", "equivariance"}));
  analyze->add_option("--pipeline", ao.pipeline, "A|B|C|D")->check(CLI::IsMember({"A", "B", "C", "D"}));
  analyze->add_option("--config", ao.config, "Configuration name such as D-1N (overrides --pipeline/--beta)");
  analyze->add_option("--beta", f_analyze.beta, "Kaiser beta")->check(CLI::NonNegativeNumber);
  analyze->add_flag("--normalized", f_analyze.normalized, "Normalized kernel");
  analyze->add_option("--act", ao.act, "relu|gelu")->check(CLI::IsMember({"relu", "gelu"}));
  analyze->add_option("--in", ao.input, "Square input image (default: band-limited corpus image from --seed)");
  analyze->add_option("--corpus-size", ao.corpus_size, "Side of the generated corpus image");
  analyze->add_option("--phi", ao.phi, "Rotation angle for the equivariance report");
  analyze->add_option("--cutoff", ao.cutoff, "Band edge for the alias report");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "aliasfree: " << e.what() << "\n" << "Run with --help for usage.\n";
    return 2;
  }

  try {
    if (kernel->parsed()) {
      emit_text(g, format_kernel_text(make_kernel(f_kernel)), out);
    } else if (freq->parsed()) {
      std::ostringstream csv;
      write_spectrum_csv(csv, freq_response(make_kernel(f_freq), freq_n));
      emit_text(g, csv.str(), out);
    } else if (resample->parsed()) {
      require_out(g, "resample");
      const Kernel2D k = make_kernel(f_resample);
      const Image img = read_raster_file(input);
      Image result;
      if (mode == "naive") {
        result = dir == "up" ? upsample2x_naive(img) : downsample2x_naive(img);
      } else {
        result = dir == "up" ? upsample2x_af(img, k, make_padding(f_resample))
                             : downsample2x_af(img, k, make_padding(f_resample));
      }
      write_raster_file(g.out, result);
    } else if (activate->parsed()) {
      require_out(g, "activate");
      const Activation a = *parse_activation(act);
      const Image img = read_raster_file(input);
      const Image result = wrapped ? wrapped_activation(img, a, make_kernel(f_activate), make_padding(f_activate))
                                   : apply_pointwise(img, a);
      write_raster_file(g.out, result);
    } else if (rotate_cmd->parsed()) {
      require_out(g, "rotate");
      const double phi = parse_angle(phi_text, "--phi");
      write_raster_file(g.out, rotate(read_raster_file(input), {phi, *parse_fill_mode(fill)}));
    } else if (sample->parsed()) {
      run_sample(so, g);
    } else if (analyze->parsed()) {
      emit_text(g, run_analyze(ao, f_analyze, g), out);
    }
  } catch (const UsageError& e) {
    err << "aliasfree: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "aliasfree: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace aliasfree::cli
