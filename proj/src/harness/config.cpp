#include "chemolab/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "chemolab/harness/csv.hpp"

namespace chemolab::harness {

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::Chemotaxis: return "chemotaxis";
    case Scenario::Diffusive: return "diffusive";
    case Scenario::GSystem: return "gsystem";
    case Scenario::FokkerPlanck: return "fokker_planck";
    case Scenario::Dual: return "dual";
    case Scenario::PairNoReaction: return "pair_no_reaction";
  }
  return "?";
}

std::string_view to_string(PotentialKind p) {
  switch (p) {
    case PotentialKind::Weakest: return "weakest";
    case PotentialKind::Field: return "field";
    case PotentialKind::Zero: return "zero";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const char* end = text.data() + text.size();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), end, value);
  if (text.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(value)) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view key, std::string_view text) {
  const double v = parse_number(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(std::string(key) + ": expected an integer");
  return static_cast<int>(v);
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(std::string(key) + ": expected true or false");
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_number(key, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s;
}

}  // namespace

void set_key(ScenarioConfig& cfg, std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  const std::string k(key);
  if (k == "scenario.name") {
    if (value == "chemotaxis") cfg.scenario = Scenario::Chemotaxis;
    else if (value == "diffusive") cfg.scenario = Scenario::Diffusive;
    else if (value == "gsystem") cfg.scenario = Scenario::GSystem;
    else if (value == "fokker_planck") cfg.scenario = Scenario::FokkerPlanck;
    else if (value == "dual") cfg.scenario = Scenario::Dual;
    else if (value == "pair_no_reaction") cfg.scenario = Scenario::PairNoReaction;
    else throw ConfigError("scenario.name: unknown scenario '" + std::string(value) + "'");
  } else if (k == "scenario.side") {
    if (value == "right") cfg.side = Side::Right;
    else if (value == "symmetric") cfg.side = Side::Symmetric;
    else throw ConfigError("scenario.side: expected right or symmetric");
  } else if (k == "scenario.potential") {
    if (value == "weakest") cfg.potential = PotentialKind::Weakest;
    else if (value == "field") cfg.potential = PotentialKind::Field;
    else if (value == "zero") cfg.potential = PotentialKind::Zero;
    else throw ConfigError("scenario.potential: expected weakest, field or zero");
  } else if (k == "params.chi") {
    cfg.params.chi = parse_number(key, value);
  } else if (k == "params.eps") {
    cfg.params.eps = parse_number(key, value);
  } else if (k == "params.sigma") {
    cfg.params.sigma = parse_number(key, value);
  } else if (k == "params.M0") {
    cfg.params.M0 = parse_number(key, value);
  } else if (k == "params.L") {
    cfg.params.L = parse_number(key, value);
  } else if (k == "grid.half_width") {
    cfg.half_width = parse_number(key, value);
  } else if (k == "grid.n_cells") {
    cfg.n_cells = parse_int(key, value);
  } else if (k == "grid.cells_per_unit") {
    cfg.cells_per_unit = parse_number(key, value);
  } else if (k == "time.t_end") {
    cfg.t_end = parse_number(key, value);
  } else if (k == "time.cfl") {
    cfg.scheme.cfl_factor = parse_number(key, value);
  } else if (k == "time.dt_max") {
    cfg.scheme.dt_max = parse_number(key, value);
  } else if (k == "time.stop_on_quarter") {
    cfg.stop_on_quarter = parse_bool(key, value);
  } else if (k == "observer.sample_interval") {
    cfg.sample_interval = parse_number(key, value);
  } else if (k == "observer.radii") {
    cfg.radii = parse_list(key, value);
  } else if (k == "observer.probes") {
    cfg.probes = parse_list(key, value);
  } else if (k == "observer.snapshots") {
    cfg.snapshots = parse_list(key, value);
  } else if (k == "observer.boundary_band") {
    cfg.boundary_band = parse_number(key, value);
  } else if (k == "output.dir") {
    cfg.output_dir = std::string(value);
  } else {
    throw ConfigError("unknown key '" + k + "'");
  }
}

double ScenarioConfig::domain_half_width() const {
  if (half_width) return *half_width;
  const bool slow = scenario == Scenario::Diffusive || scenario == Scenario::GSystem;
  return (slow ? 3.0 : 2.0) * params.L + 8.0;
}

Grid ScenarioConfig::make_grid() const {
  if (n_cells) return Grid(domain_half_width(), *n_cells);
  return Grid::with_resolution(domain_half_width(), cells_per_unit);
}

double ScenarioConfig::effective_sample_interval() const {
  if (sample_interval) return *sample_interval;
  const double gamma = params.gamma();
  if (gamma > 0.0 && scenario != Scenario::Diffusive && scenario != Scenario::GSystem) {
    return std::min(0.01 * params.L / gamma, 0.1);
  }
  return 0.1;
}

ObserverSpec ScenarioConfig::observer_spec() const {
  ObserverSpec spec;
  spec.sample_interval = effective_sample_interval();
  spec.radii = radii;
  spec.probes = probes;
  spec.snapshot_times = snapshots;
  spec.boundary_band = boundary_band;
  spec.stop_on_quarter = stop_on_quarter;
  return spec;
}

void ScenarioConfig::validate() const {
  params.validate();
  try {
    scheme.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("time.cfl/time.dt_max: ") + e.what());
  }
  const double hw = domain_half_width();
  if (!(hw > 0.0)) throw ConfigError("grid.half_width must be positive");
  if (params.L + 6.0 > hw) {
    throw ConfigError("params.L: the initial bump at L needs grid.half_width >= L + 6 (L = " +
                      format_double(params.L) + ", half_width = " + format_double(hw) + ")");
  }
  if (n_cells && (*n_cells < Grid::kMinCells || *n_cells % 2 != 0)) {
    throw ConfigError("grid.n_cells must be even and >= 16");
  }
  if (!(cells_per_unit > 0.0)) throw ConfigError("grid.cells_per_unit must be positive");
  if (!(t_end >= 0.0)) throw ConfigError("time.t_end must be >= 0");
  if (sample_interval && !(*sample_interval > 0.0)) throw ConfigError("observer.sample_interval must be positive");
  for (double r : radii) {
    if (r < 0.0 || r > hw) throw ConfigError("observer.radii: radius outside the domain");
  }
  for (double x : probes) {
    if (x < 0.0 || x > hw) throw ConfigError("observer.probes: probe outside the domain");
  }
  for (double s : snapshots) {
    if (s < 0.0) throw ConfigError("observer.snapshots: negative time");
  }
  if (!(boundary_band > 0.0)) throw ConfigError("observer.boundary_band must be positive");
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      static const char* known[] = {"scenario", "params", "grid", "time", "observer", "output"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known)) {
        throw ConfigError(where + "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "missing key");
    std::string full(key);
    if (full.find('.') == std::string::npos) {
      if (section.empty()) throw ConfigError(where + "key '" + full + "' outside of any section");
      full = section + "." + full;
    }
    try {
      set_key(cfg, full, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string echo_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  const Grid grid = cfg.make_grid();
  out << "[scenario]\n"
      << "name = " << to_string(cfg.scenario) << "\n"
      << "side = " << (cfg.side == Side::Right ? "right" : "symmetric") << "\n"
      << "potential = " << to_string(cfg.potential) << "\n\n"
      << "[params]\n"
      << "chi = " << format_double(cfg.params.chi) << "\n"
      << "eps = " << format_double(cfg.params.eps) << "\n"
      << "sigma = " << format_double(cfg.params.sigma) << "\n"
      << "M0 = " << format_double(cfg.params.M0) << "\n"
      << "L = " << format_double(cfg.params.L) << "\n"
      << "# gamma = " << format_double(cfg.params.gamma()) << "\n\n"
      << "[grid]\n"
      << "half_width = " << format_double(grid.half_width()) << "\n"
      << "n_cells = " << grid.size() << "\n"
      << "# dx = " << format_double(grid.dx()) << "\n\n"
      << "[time]\n"
      << "t_end = " << format_double(cfg.t_end) << "\n"
      << "cfl = " << format_double(cfg.scheme.cfl_factor) << "\n"
      << "dt_max = " << format_double(cfg.scheme.dt_max) << "\n"
      << "stop_on_quarter = " << (cfg.stop_on_quarter ? "true" : "false") << "\n\n"
      << "[observer]\n"
      << "sample_interval = " << format_double(cfg.effective_sample_interval()) << "\n"
      << "radii = " << join_list(cfg.radii) << "\n"
      << "probes = " << join_list(cfg.probes) << "\n"
      << "snapshots = " << join_list(cfg.snapshots) << "\n"
      << "boundary_band = " << format_double(cfg.boundary_band) << "\n";
  return out.str();
}

}  // namespace chemolab::harness
