#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chemolab/harness/run.hpp"

namespace chemolab::harness {

struct SweepAxis {
  std::string key;  // L, chi, eps, M0 or sigma (optionally prefixed by "params.")
  std::vector<double> values;
};

/// Parses "key=v1,v2,...".
SweepAxis parse_axis(std::string_view text);

struct SweepSpec {
  ScenarioConfig base;
  std::vector<SweepAxis> axes;
  int workers = 1;
};

struct SweepPoint {
  int index = 0;
  std::vector<double> coords;  // one value per axis
  bool ok = false;
  std::string error;
  RunSummary summary;
};

struct FitRow {
  std::string axis;
  std::string group;  // other-axis coordinates, "key=value;..."
  std::string metric;
  int n_points = 0;
  PowerLawFit fit;
};

struct SweepReport {
  std::vector<SweepPoint> points;  // cartesian order, last axis fastest
  std::vector<FitRow> fits;
};

/// Worker count from the CHEMOLAB_WORKERS environment variable, else the
/// hardware concurrency (at least 1).
int default_workers();

/// Runs every point of the cartesian product. Each point writes into
/// `<output_dir>/point_<index>` when an output directory is set; sweep.csv,
/// failures.csv and fits.csv go to the output directory itself. Results do
/// not depend on the worker count.
SweepReport sweep(const SweepSpec& spec);

/// Power-law fits of each axis with at least 3 distinct positive values,
/// grouped by the remaining coordinates.
std::vector<FitRow> fit_axes(const std::vector<std::string>& axis_keys, const std::vector<SweepPoint>& points);

/// Regenerates fits.csv (sweep directory) or reaction_time_report.csv (run
/// directory) from stored CSVs and returns a human-readable summary.
std::string report(const std::filesystem::path& dir);

}  // namespace chemolab::harness
