#include "aliasfree/pipeline.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "aliasfree/errors.hpp"
#include "aliasfree/resampling.hpp"

namespace aliasfree {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_name(std::string_view name) {
  throw DomainError("unrecognised configuration name '" + std::string(name) +
                    "' (expected A, or B/C/D followed by -<beta> and an optional N, e.g. B-2N)");
}

}  // namespace

PipelineConfig PipelineConfig::parse(std::string_view name) {
  std::string_view s = trim(name);
  if (s.starts_with("Config")) {
    s.remove_prefix(6);
    if (!s.empty() && s.front() == '.') s.remove_prefix(1);
    s = trim(s);
  }
  if (s.empty()) bad_name(name);

  PipelineConfig config;
  switch (s.front()) {
    case 'A': config.arch = Architecture::A; break;
    case 'B': config.arch = Architecture::B; break;
    case 'C': config.arch = Architecture::C; break;
    case 'D': config.arch = Architecture::D; break;
    default: bad_name(name);
  }
  s.remove_prefix(1);
  if (config.arch == Architecture::A) {
    if (!s.empty()) bad_name(name);
    return config;
  }

  if (s.empty() || s.front() != '-') bad_name(name);
  s.remove_prefix(1);
  FilterSpec spec;
  if (!s.empty() && s.back() == 'N') {
    spec.normalized = true;
    s.remove_suffix(1);
  }
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), spec.kaiser_beta);
  if (ec != std::errc{} || end != s.data() + s.size()) bad_name(name);
  spec.validate();
  config.filter = spec;
  return config;
}

std::string PipelineConfig::name() const {
  if (arch == Architecture::A) return "A";
  const char letter = "ABCD"[static_cast<int>(arch)];
  const FilterSpec spec = filter.value_or(FilterSpec{});
  char beta[32];
  std::snprintf(beta, sizeof beta, "%g", spec.kaiser_beta);
  return std::string(1, letter) + "-" + beta + (spec.normalized ? "N" : "");
}

Image run_pipeline(const PipelineConfig& config, const Image& img) {
  if (config.arch == Architecture::A) {
    return upsample2x_naive(apply_pointwise(downsample2x_naive(img), config.activation));
  }
  const Kernel2D kernel = design_kernel(config.filter.value_or(FilterSpec{}));
  switch (config.arch) {
    case Architecture::B:
      return upsample2x_af(apply_pointwise(downsample2x_af(img, kernel), config.activation), kernel);
    case Architecture::C:
      return upsample2x_naive(wrapped_activation(downsample2x_naive(img), config.activation, kernel));
    default:
      return upsample2x_af(wrapped_activation(downsample2x_af(img, kernel), config.activation, kernel), kernel);
  }
}

}  // namespace aliasfree
