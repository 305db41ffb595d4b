#include "chemolab/harness/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "chemolab/harness/csv.hpp"

namespace chemolab::harness {

namespace {

namespace fs = std::filesystem;

std::string full_key(const std::string& key) {
  static const std::set<std::string> allowed{"L", "chi", "eps", "M0", "sigma"};
  std::string k = key;
  if (k.rfind("params.", 0) == 0) k = k.substr(7);
  if (!allowed.contains(k)) throw ConfigError("sweep axis must be one of L, chi, eps, M0, sigma; got '" + key + "'");
  return "params." + k;
}

std::string short_key(const std::string& key) { return full_key(key).substr(7); }

std::string point_dir(int index) {
  std::string s = std::to_string(index);
  return "point_" + std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

}  // namespace

SweepAxis parse_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError("axis must look like key=v1,v2,...");
  SweepAxis axis;
  axis.key = short_key(std::string(text.substr(0, eq)));
  ScenarioConfig probe;
  std::string_view rest = text.substr(eq + 1);
  std::size_t start = 0;
  while (true) {
    const auto comma = rest.find(',', start);
    const auto item = rest.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    set_key(probe, full_key(axis.key), item);  // validates the number
    axis.values.push_back(std::stod(std::string(item)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return axis;
}

int default_workers() {
  if (const char* env = std::getenv("CHEMOLAB_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<FitRow> fit_axes(const std::vector<std::string>& axis_keys, const std::vector<SweepPoint>& points) {
  std::vector<FitRow> fits;
  for (std::size_t a = 0; a < axis_keys.size(); ++a) {
    // group label -> (axis value, metric value), in first-seen order
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> groups;
    std::string metric;
    for (const auto& p : points) {
      if (!p.ok || p.summary.primary_metric.empty()) continue;
      metric = p.summary.primary_metric;
      std::string label;
      for (std::size_t b = 0; b < axis_keys.size(); ++b) {
        if (b == a) continue;
        if (!label.empty()) label += ";";
        label += axis_keys[b] + "=" + format_double(p.coords[b]);
      }
      if (!groups.contains(label)) order.push_back(label);
      const double y = p.summary.metric(metric);
      groups[label].emplace_back(p.coords[a], y);
    }
    for (const auto& label : order) {
      auto pts = groups[label];
      std::set<double> distinct;
      bool positive = true;
      for (auto [x, y] : pts) {
        distinct.insert(x);
        positive = positive && x > 0.0 && y > 0.0;
      }
      if (distinct.size() < 3 || !positive) continue;
      FitRow row;
      row.axis = axis_keys[a];
      row.group = label;
      row.metric = metric;
      row.n_points = static_cast<int>(pts.size());
      row.fit = fit_power_law(pts);
      fits.push_back(row);
    }
  }
  return fits;
}

namespace {

CsvTable fits_table(const std::vector<FitRow>& fits) {
  CsvTable t({"axis", "group", "metric", "n_points", "slope", "intercept", "r_squared"});
  for (const auto& f : fits) {
    t.row(std::vector<std::string>{f.axis, f.group, f.metric, std::to_string(f.n_points), format_double(f.fit.slope),
                                   format_double(f.fit.intercept), format_double(f.fit.r_squared)});
  }
  return t;
}

}  // namespace

SweepReport sweep(const SweepSpec& spec) {
  if (spec.workers < 1) throw ConfigError("workers must be >= 1");
  std::vector<std::string> keys;
  std::size_t total = 1;
  for (const auto& axis : spec.axes) {
    if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.key + "' has no values");
    keys.push_back(short_key(axis.key));
    total *= axis.values.size();
  }

  SweepReport report;
  report.points.resize(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    SweepPoint& p = report.points[idx];
    p.index = static_cast<int>(idx);
    std::size_t rem = idx;
    p.coords.assign(spec.axes.size(), 0.0);
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const auto& vals = spec.axes[a].values;
      p.coords[a] = vals[rem % vals.size()];
      rem /= vals.size();
    }
  }

  const fs::path out_dir = spec.base.output_dir;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      SweepPoint& p = report.points[idx];
      try {
        ScenarioConfig cfg = spec.base;
        for (std::size_t a = 0; a < keys.size(); ++a) {
          set_key(cfg, full_key(keys[a]), format_double(p.coords[a]));
        }
        if (!out_dir.empty()) cfg.output_dir = (out_dir / point_dir(p.index)).string();
        p.summary = run(cfg);
        p.ok = true;
      } catch (const std::exception& e) {
        p.ok = false;
        p.error = e.what();
      }
    }
  };
  const int n_threads = static_cast<int>(std::min<std::size_t>(spec.workers, total));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < n_threads; ++w) pool.emplace_back(work);
    work();
  }

  report.fits = fit_axes(keys, report.points);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    // Metric columns: union over successful points, in first-seen order.
    std::vector<std::string> metric_names;
    for (const auto& p : report.points) {
      if (!p.ok) continue;
      for (const auto& [k, v] : p.summary.metrics) {
        if (std::find(metric_names.begin(), metric_names.end(), k) == metric_names.end()) metric_names.push_back(k);
      }
    }
    std::vector<std::string> header{"point"};
    header.insert(header.end(), keys.begin(), keys.end());
    header.insert(header.end(), metric_names.begin(), metric_names.end());
    CsvTable table(header);
    CsvTable failures({"point", "error"});
    for (const auto& p : report.points) {
      if (!p.ok) {
        std::string msg = p.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        failures.row(std::vector<std::string>{std::to_string(p.index), msg});
        continue;
      }
      std::vector<std::string> cells{std::to_string(p.index)};
      for (double c : p.coords) cells.push_back(format_double(c));
      for (const auto& name : metric_names) {
        std::string cell;
        for (const auto& [k, v] : p.summary.metrics) {
          if (k == name) cell = format_double(v);
        }
        cells.push_back(cell);
      }
      table.row(cells);
    }
    table.write(out_dir / "sweep.csv");
    failures.write(out_dir / "failures.csv");
    fits_table(report.fits).write(out_dir / "fits.csv");
  }
  return report;
}

std::string report(const fs::path& dir) {
  std::ostringstream out;
  if (fs::exists(dir / "sweep.csv")) {
    const CsvTable table = read_csv(dir / "sweep.csv");
    const auto& header = table.header();
    static const std::set<std::string> axis_names{"L", "chi", "eps", "M0", "sigma"};
    std::vector<std::string> keys;
    std::size_t col = 1;
    while (col < header.size() && axis_names.contains(header[col])) keys.push_back(header[col++]);
    std::string metric;
    for (const char* candidate : {"t_quarter", "transport_time", "spreading_constant"}) {
      if (std::find(header.begin(), header.end(), candidate) != header.end()) {
        metric = candidate;
        break;
      }
    }
    const auto metric_col = std::find(header.begin(), header.end(), metric) - header.begin();
    std::vector<SweepPoint> points;
    for (const auto& row : table.rows()) {
      SweepPoint p;
      p.index = std::stoi(row[0]);
      for (std::size_t a = 0; a < keys.size(); ++a) p.coords.push_back(std::stod(row[1 + a]));
      p.ok = !metric.empty() && !row[metric_col].empty();
      if (p.ok) {
        p.summary.primary_metric = metric;
        p.summary.metrics.emplace_back(metric, std::stod(row[metric_col]));
      }
      points.push_back(std::move(p));
    }
    const auto fits = fit_axes(keys, points);
    fits_table(fits).write(dir / "fits.csv");
    out << "sweep: " << points.size() << " points";
    if (fs::exists(dir / "failures.csv")) out << ", " << read_csv(dir / "failures.csv").rows().size() << " failures";
    out << "\n";
    for (const auto& f : fits) {
      out << "fit " << f.metric << " vs " << f.axis << " [" << f.group << "]: slope " << format_double(f.fit.slope)
          << ", r^2 " << format_double(f.fit.r_squared) << " (" << f.n_points << " points)\n";
    }
    return out.str();
  }
  if (fs::exists(dir / "mass_timeseries.csv")) {
    const CsvTable table = read_csv(dir / "mass_timeseries.csv");
    MassSeries series;
    for (const auto& row : table.rows()) {
      series.times.push_back(std::stod(row[0]));
      series.mass1.push_back(std::stod(row[1]));
      series.mass2.push_back(std::stod(row[2]));
    }
    if (series.times.empty()) throw ConfigError("mass_timeseries.csv has no rows");
    const ReactionTimeResult r = quarter_mass_time(series);
    CsvTable t({"t_quarter", "crossed", "fraction_at_end"});
    t.row({r.t_quarter, r.crossed ? 1.0 : 0.0, r.fraction_at_end});
    t.write(dir / "reaction_time_report.csv");
    out << "run: " << series.times.size() << " samples, t_quarter " << format_double(r.t_quarter)
        << (r.crossed ? "" : " (not crossed)") << ", fraction at end " << format_double(r.fraction_at_end) << "\n";
    return out.str();
  }
  throw ConfigError("no sweep.csv or mass_timeseries.csv in " + dir.string());
}

}  // namespace chemolab::harness
