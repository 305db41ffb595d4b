#include "chemolab/harness/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "chemolab/harness/csv.hpp"

namespace chemolab::harness {

double RunSummary::metric(std::string_view name) const {
  for (const auto& [k, v] : metrics) {
    if (k == name) return v;
  }
  throw ConfigError("run summary has no metric '" + std::string(name) + "'");
}

Field dual_initial_bump(const Grid& grid) {
  constexpr double inner = 13.0 / 60.0;
  constexpr double outer = 6.0 / 25.0;
  return Field::sample_even(grid, [](double x) {
    const double r = std::abs(x);
    if (r <= inner) return 1.0;
    if (r >= outer) return 0.0;
    const double u = (outer - r) / (outer - inner);
    return u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
  });
}

namespace {

namespace fs = std::filesystem;

class OutputSet {
 public:
  OutputSet(const std::string& dir, RunSummary& summary) : summary_(summary) {
    if (dir.empty()) return;
    dir_ = dir;
    created_dir_ = !fs::exists(dir_);
    fs::create_directories(dir_);
  }

  bool enabled() const { return !dir_.empty(); }

  void table(const std::string& name, const CsvTable& t) {
    if (!enabled()) return;
    const fs::path p = dir_ / name;
    summary_.files.push_back(p);
    t.write(p);
  }

  void text(const std::string& name, const std::string& body) {
    if (!enabled()) return;
    const fs::path p = dir_ / name;
    summary_.files.push_back(p);
    std::ofstream out(p, std::ios::binary);
    out << body;
    if (!out) throw ConfigError("cannot write " + p.string());
  }

  void discard() noexcept {
    std::error_code ec;
    for (const auto& p : summary_.files) fs::remove(p, ec);
    if (created_dir_) fs::remove_all(dir_, ec);
    summary_.files.clear();
  }

 private:
  RunSummary& summary_;
  fs::path dir_;
  bool created_dir_ = false;
};

PotentialSpec make_potential(const ScenarioConfig& cfg, const Grid& grid) {
  switch (cfg.potential) {
    case PotentialKind::Weakest:
      return WeakestAnalytic{cfg.params.gamma()};
    case PotentialKind::Field: {
      Field rho2 = build_eta(grid);
      rho2.values *= cfg.params.sigma;
      return FromField{cfg.params.chi, std::move(rho2)};
    }
    case PotentialKind::Zero:
      return ZeroPotential{};
  }
  return ZeroPotential{};
}

Field initial_rho2(const ScenarioConfig& cfg, const Grid& grid) {
  Field rho2 = build_eta(grid);
  rho2.values *= cfg.params.sigma;
  return rho2;
}

CsvTable mass_table(const Observer& obs) {
  CsvTable t({"t", "mass_rho1", "mass_rho2", "boundary_mass"});
  for (std::size_t k = 0; k < obs.times.size(); ++k) {
    t.row({obs.times[k], obs.mass1[k], obs.mass2[k], obs.boundary_mass[k]});
  }
  return t;
}

void write_series(OutputSet& out, const Observer& obs) {
  out.table("mass_timeseries.csv", mass_table(obs));
  const ObserverSpec& spec = obs.spec();
  if (!spec.radii.empty()) {
    std::vector<std::string> header{"t"};
    for (double r : spec.radii) header.push_back("r=" + format_double(r));
    CsvTable t(header);
    for (std::size_t k = 0; k < obs.times.size(); ++k) {
      std::vector<double> row{obs.times[k]};
      row.insert(row.end(), obs.concentration[k].begin(), obs.concentration[k].end());
      t.row(row);
    }
    out.table("concentration.csv", t);
  }
  if (!spec.probes.empty()) {
    std::vector<std::string> header{"t"};
    for (double x : spec.probes) header.push_back("x=" + format_double(x));
    for (double x : spec.probes) header.push_back("x=-" + format_double(x));
    CsvTable t(header);
    for (std::size_t k = 0; k < obs.times.size(); ++k) {
      std::vector<double> row{obs.times[k]};
      row.insert(row.end(), obs.probe_right[k].begin(), obs.probe_right[k].end());
      row.insert(row.end(), obs.probe_left[k].begin(), obs.probe_left[k].end());
      t.row(row);
    }
    out.table("probes.csv", t);
  }
  for (const Snapshot& s : obs.snapshots) {
    CsvTable t({"x", "rho1", "rho2", "v"});
    const Grid& g = s.rho1.grid;
    for (int i = 0; i < g.size(); ++i) {
      t.row({g.center(i), s.rho1[i], s.rho2[i], 0.5 * (s.v[i] + s.v[i + 1])});
    }
    out.table("snapshot_" + format_double(s.t) + ".csv", t);
  }
}

void check_boundary(const Observer& obs, double reference_mass, RunSummary& summary) {
  double worst = 0.0;
  for (double b : obs.boundary_mass) worst = std::max(worst, b);
  summary.metrics.emplace_back("max_boundary_mass", worst);
  if (worst > kBoundaryWarnFraction * reference_mass) {
    summary.warnings.push_back("boundary strip holds " + format_double(worst) +
                               " mass; the domain may be too small");
  }
}

void reaction_outputs(RunSummary& summary, const Observer& obs) {
  const ReactionTimeResult r = quarter_mass_time(mass_series(obs));
  summary.reaction = r;
  summary.metrics.emplace_back("t_quarter", r.t_quarter);
  summary.metrics.emplace_back("crossed", r.crossed ? 1.0 : 0.0);
  summary.metrics.emplace_back("fraction_at_end", r.fraction_at_end);
  summary.primary_metric = "t_quarter";
}

void write_reaction_table(OutputSet& out, const RunSummary& summary) {
  std::vector<std::string> header;
  std::vector<double> row;
  for (const auto& [k, v] : summary.metrics) {
    header.push_back(k);
    row.push_back(v);
  }
  CsvTable t(header);
  t.row(row);
  out.table("reaction_time.csv", t);
}

double mass_difference_drift(const Observer& obs) {
  if (obs.times.empty()) return 0.0;
  const double d0 = obs.mass1.front() - obs.mass2.front();
  double worst = 0.0;
  for (std::size_t k = 0; k < obs.times.size(); ++k) {
    worst = std::max(worst, std::abs(obs.mass1[k] - obs.mass2[k] - d0));
  }
  return worst;
}

double min_of(const Observer& obs) {
  double lo = std::numeric_limits<double>::infinity();
  for (double v : obs.min_value) lo = std::min(lo, v);
  return lo;
}

void run_reacting(const ScenarioConfig& cfg, OutputSet& out, RunSummary& summary) {
  const Grid grid = cfg.make_grid();
  SystemState state{0.0, build_rho1_initial(grid, cfg.params.M0, cfg.params.L, cfg.side), initial_rho2(cfg, grid)};
  Observer obs(cfg.observer_spec());
  const bool diffusive = cfg.scenario == Scenario::Diffusive;
  if (diffusive) {
    evolve_diffusive(std::move(state), cfg.params, cfg.scheme, cfg.t_end, obs);
  } else {
    evolve_chemotaxis(std::move(state), cfg.params, cfg.scheme, cfg.t_end, obs);
  }
  reaction_outputs(summary, obs);
  const ReactionTimeResult& r = *summary.reaction;
  if (diffusive) {
    if (r.crossed) {
      const DiffusiveDiagnostics d = diffusive_bound_diagnostics(r, cfg.params);
      summary.metrics.emplace_back("eps_M0", d.eps_M0);
      summary.metrics.emplace_back("case1_ratio", d.case1_ratio);
      summary.metrics.emplace_back("case2_ratio", d.case2_ratio);
      summary.metrics.emplace_back("case1_regime", d.case1_regime ? 1.0 : 0.0);
      summary.metrics.emplace_back("case1_valid", d.case1_valid ? 1.0 : 0.0);
      if (!d.case1_valid) summary.warnings.push_back("log(M0 eps L) <= 0: case-1 diagnostic out of regime");
    }
  } else if (cfg.params.gamma() > 0.0) {
    summary.metrics.emplace_back("t_quarter_gamma_over_L", r.t_quarter * cfg.params.gamma() / cfg.params.L);
  }
  summary.metrics.emplace_back("mass_difference_drift", mass_difference_drift(obs));
  summary.metrics.emplace_back("min_density", min_of(obs));
  check_boundary(obs, cfg.params.M0, summary);
  write_series(out, obs);
  write_reaction_table(out, summary);
}

void run_gsystem(const ScenarioConfig& cfg, OutputSet& out, RunSummary& summary) {
  const Grid grid = cfg.make_grid();
  const SystemState init{0.0, build_rho1_initial(grid, cfg.params.M0, cfg.params.L, cfg.side),
                         initial_rho2(cfg, grid)};
  // Plain dt_max steps in both runs so the step sequences coincide.
  Observer g_obs(cfg.observer_spec());
  const SystemState g = evolve_gsystem(init, cfg.params, cfg.scheme, cfg.t_end, g_obs);
  Observer d_obs(cfg.observer_spec());
  const SystemState d = evolve_diffusive(init, cfg.params, cfg.scheme, cfg.t_end, d_obs);

  reaction_outputs(summary, g_obs);
  const ReactionTimeResult paired = quarter_mass_time(mass_series(d_obs));
  summary.metrics.emplace_back("paired_t_quarter", paired.t_quarter);
  summary.metrics.emplace_back("paired_crossed", paired.crossed ? 1.0 : 0.0);
  summary.metrics.emplace_back("max_rho1_minus_g1", (d.rho1.values - g.rho1.values).maxCoeff());
  summary.metrics.emplace_back("max_g2_minus_rho2", (g.rho2.values - d.rho2.values).maxCoeff());
  check_boundary(g_obs, cfg.params.M0, summary);
  write_series(out, g_obs);
  write_reaction_table(out, summary);
}

void run_fokker_planck(const ScenarioConfig& cfg, OutputSet& out, RunSummary& summary) {
  const Grid grid = cfg.make_grid();
  const PotentialSpec pot = make_potential(cfg, grid);
  const Field rho0 = build_rho1_initial(grid, cfg.params.M0, cfg.params.L, cfg.side);
  ObserverSpec spec = cfg.observer_spec();
  if (std::find(spec.radii.begin(), spec.radii.end(), kTransportRadius) == spec.radii.end()) {
    spec.radii.push_back(kTransportRadius);
  }
  Observer obs(spec);
  const Field rho = evolve_fokker_planck(rho0, pot, cfg.scheme, cfg.t_end, obs);
  const double t = first_concentration_time(obs, kTransportRadius, kTransportFraction * cfg.params.M0);
  summary.metrics.emplace_back("transport_time", t);
  summary.metrics.emplace_back("transport_reached", t >= 0.0 ? 1.0 : 0.0);
  if (t >= 0.0 && cfg.params.gamma() > 0.0) {
    summary.metrics.emplace_back("transport_gamma_over_L", t * cfg.params.gamma() / cfg.params.L);
  }
  summary.metrics.emplace_back("mass_change", std::abs(rho.total_mass() - rho0.total_mass()));
  summary.metrics.emplace_back("min_density", min_of(obs));
  summary.primary_metric = "transport_time";
  if (t < 0.0) summary.warnings.push_back("transport threshold not reached before t_end");
  check_boundary(obs, cfg.params.M0, summary);
  write_series(out, obs);
}

double weighted_integral(const Field& f, const Field& potential) {
  return (f.values.array() * potential.values.array().exp()).sum() * f.grid.dx();
}

void run_dual(const ScenarioConfig& cfg, OutputSet& out, RunSummary& summary) {
  const Grid grid = cfg.make_grid();
  const PotentialSpec pot = make_potential(cfg, grid);
  const Field f0 = dual_initial_bump(grid);
  Observer obs(cfg.observer_spec());
  const Field f = evolve_dual(f0, pot, cfg.scheme, cfg.t_end, obs);
  const Field h = potential_values(pot, grid);
  const double w0 = weighted_integral(f0, h);
  summary.metrics.emplace_back("spreading_constant", dual_spreading_constant(f, cfg.params.gamma(), cfg.t_end));
  summary.metrics.emplace_back("min_f", f.values.minCoeff());
  summary.metrics.emplace_back("max_f", f.values.maxCoeff());
  summary.metrics.emplace_back("weighted_integral_change", std::abs(weighted_integral(f, h) - w0) / w0);
  summary.primary_metric = "spreading_constant";
  write_series(out, obs);
}

void run_pair(const ScenarioConfig& cfg, OutputSet& out, RunSummary& summary) {
  const Grid grid = cfg.make_grid();
  const SystemState init{0.0, build_rho1_initial(grid, cfg.params.M0, cfg.params.L, cfg.side),
                         initial_rho2(cfg, grid)};
  Observer master_obs(cfg.observer_spec());
  StepTrace trace;
  const SystemState master = evolve_chemotaxis(init, cfg.params, cfg.scheme, cfg.t_end, master_obs, &trace);
  ObserverSpec slave_spec = cfg.observer_spec();
  slave_spec.stop_on_quarter = false;
  Observer slave_obs(slave_spec);
  const SystemState slave = evolve_no_reaction(init, trace, master.t, slave_obs);

  reaction_outputs(summary, master_obs);
  summary.metrics.emplace_back("min_gap_final", (slave.rho1.values - master.rho1.values).minCoeff());
  summary.metrics.emplace_back("no_reaction_mass_change",
                               std::abs(slave.rho1.total_mass() - init.rho1.total_mass()));
  check_boundary(master_obs, cfg.params.M0, summary);
  write_series(out, master_obs);
  CsvTable t({"t", "mass_rho1_no_reaction"});
  for (std::size_t k = 0; k < slave_obs.times.size(); ++k) t.row({slave_obs.times[k], slave_obs.mass1[k]});
  out.table("no_reaction_mass.csv", t);
  write_reaction_table(out, summary);
}

}  // namespace

RunSummary run(const ScenarioConfig& config) {
  config.validate();
  RunSummary summary;
  summary.config = config;
  OutputSet out(config.output_dir, summary);
  try {
    if (eta_widened(config.make_grid())) {
      summary.warnings.push_back("attractant shoulder widened to " +
                                 format_double(eta_transition_width(config.make_grid())));
    }
    switch (config.scenario) {
      case Scenario::Chemotaxis:
      case Scenario::Diffusive:
        run_reacting(config, out, summary);
        break;
      case Scenario::GSystem:
        run_gsystem(config, out, summary);
        break;
      case Scenario::FokkerPlanck:
        run_fokker_planck(config, out, summary);
        break;
      case Scenario::Dual:
        run_dual(config, out, summary);
        break;
      case Scenario::PairNoReaction:
        run_pair(config, out, summary);
        break;
    }
    CsvTable metrics({"metric", "value"});
    for (const auto& [k, v] : summary.metrics) metrics.row(std::vector<std::string>{k, format_double(v)});
    out.table("summary.csv", metrics);
    std::string echo = echo_config(config);
    for (const auto& w : summary.warnings) echo += "# warning: " + w + "\n";
    out.text("config.txt", echo);
  } catch (...) {
    out.discard();
    throw;
  }
  return summary;
}

}  // namespace chemolab::harness
