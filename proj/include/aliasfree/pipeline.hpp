#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "aliasfree/activation.hpp"
#include "aliasfree/filter_design.hpp"
#include "aliasfree/image.hpp"

namespace aliasfree {

/// Resampling/nonlinearity variants:
///   A  max-pool down, plain activation, bilinear up
///   B  alias-free down and up, plain activation
///   C  max-pool down, alias-free wrapped activation, bilinear up
///   D  alias-free down and up, wrapped activation
enum class Architecture { A, B, C, D };

/// Architecture plus the filter it uses. Names follow "<letter>[-<beta>[N]]",
/// e.g. "B-2N" (beta 2, normalized) or "D-1"; A carries no filter.
struct PipelineConfig {
  Architecture arch = Architecture::A;
  std::optional<FilterSpec> filter;
  Activation activation = Activation::ReLU;

  static PipelineConfig parse(std::string_view name);
  std::string name() const;
};

/// Fixed-weight down -> activation -> up chain for the configuration. Output
/// shape equals input shape.
Image run_pipeline(const PipelineConfig& config, const Image& img);

}  // namespace aliasfree
