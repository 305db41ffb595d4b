#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chemolab/coupled_system.hpp"

namespace chemolab::harness {

enum class Scenario { Chemotaxis, Diffusive, GSystem, FokkerPlanck, Dual, PairNoReaction };
enum class PotentialKind { Weakest, Field, Zero };

std::string_view to_string(Scenario s);
std::string_view to_string(PotentialKind p);

/// A fully validated description of one simulation.
///
/// Config files are line oriented:
///
///     # comment
///     [params]
///     chi = 32            # same as `params.chi = 32` anywhere in the file
///     L = 16
///
/// Sections: [scenario] [params] [grid] [time] [observer] [output].
/// Lists are comma separated; booleans are true/false/1/0.
struct ScenarioConfig {
  Scenario scenario = Scenario::Chemotaxis;
  Side side = Side::Right;
  PotentialKind potential = PotentialKind::Weakest;

  Params params;

  std::optional<double> half_width;  // default 2L + 8 (3L + 8 without transport)
  std::optional<int> n_cells;        // overrides cells_per_unit
  double cells_per_unit = 64.0;

  SchemeConfig scheme;
  double t_end = 1.0;
  bool stop_on_quarter = false;

  std::optional<double> sample_interval;  // default min(0.01 L / gamma, 0.1)
  std::vector<double> radii;
  std::vector<double> probes;
  std::vector<double> snapshots;
  double boundary_band = 1.0;

  std::string output_dir;

  double domain_half_width() const;
  Grid make_grid() const;
  double effective_sample_interval() const;
  ObserverSpec observer_spec() const;

  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Parses and validates. Syntax errors carry the line number.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Assigns `section.key` from its textual value (used by the parser and by
/// sweep axes). Throws ConfigError on unknown keys or malformed values.
void set_key(ScenarioConfig& cfg, std::string_view key, std::string_view value);

/// Canonical text form, including derived quantities (params.gamma, grid).
std::string echo_config(const ScenarioConfig& cfg);

}  // namespace chemolab::harness
