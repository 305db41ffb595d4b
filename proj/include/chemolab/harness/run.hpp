#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chemolab/analytics.hpp"
#include "chemolab/harness/config.hpp"

namespace chemolab::harness {

struct RunSummary {
  ScenarioConfig config;
  std::optional<ReactionTimeResult> reaction;
  /// Scalar results in a fixed, scenario-dependent order.
  std::vector<std::pair<std::string, double>> metrics;
  /// Name of the metric used for scaling fits (empty if none).
  std::string primary_metric;
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> files;

  /// Throws ConfigError for unknown names.
  double metric(std::string_view name) const;
};

/// Boundary-strip mass above this fraction of the initial mass raises a warning.
inline constexpr double kBoundaryWarnFraction = 1e-6;

/// Runs one scenario. Writes CSV outputs to `config.output_dir` unless it is
/// empty. On failure any files this call created are removed and the error
/// is rethrown.
RunSummary run(const ScenarioConfig& config);

/// Initial datum of the dual scenario: 1 on |x| <= 13/60, quintic smoothstep
/// down to 0 at |x| = 6/25. Exactly even.
Field dual_initial_bump(const Grid& grid);

/// Mass-threshold radius and fraction of the transport-time metric.
inline constexpr double kTransportRadius = 6.0 / 25.0;
inline constexpr double kTransportFraction = 0.2;

}  // namespace chemolab::harness
