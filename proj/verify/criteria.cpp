#include "verify/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "chemolab/analytics.hpp"
#include "chemolab/harness/sweep.hpp"
#include "verify/oracles.hpp"

namespace chemolab::verify {

std::string CriterionResult::line() const {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", seconds);
  return std::string(passed ? "PASS " : "FAIL ") + id + " " + name + ": " + measured + " (" + secs + " s)";
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
  Clock::time_point start = Clock::now();
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start).count(); }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

CriterionResult finish(std::string id, std::string name, bool passed, const std::ostringstream& measured,
                       const Timer& timer) {
  return CriterionResult{std::move(id), std::move(name), passed, measured.str(), timer.seconds()};
}

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

// Acceptance-scale physical parameters.
constexpr double kM0 = 1000.0;
constexpr double kGamma = 32.0;
constexpr double kCellsPerUnit = 64.0;

Params chemotaxis_params(double L, double chi) {
  Params p;
  p.chi = chi;
  p.eps = 1.0;
  p.sigma = 1.0;
  p.M0 = kM0;
  p.L = L;
  return p;
}

Grid acceptance_grid(double L) { return Grid::with_resolution(2.0 * L + 8.0, kCellsPerUnit); }

double sample_interval(double L, double gamma) { return gamma > 0.0 ? std::min(0.01 * L / gamma, 0.1) : 0.1; }

double defect_against_points(int n) {
  const Grid g(40.0, n);
  const Field u = inv_laplacian(gaussian_cell_averages(g, 0.0, 1.0, 1.0));
  const Vector lap = negative_laplacian(u);
  const Field exact = gaussian_point_values(g, 0.0, 1.0, 1.0);
  const auto interior = Eigen::seqN(1, n - 2);
  return (lap(interior) - exact.values(interior)).cwiseAbs().maxCoeff() / exact.values.maxCoeff();
}

}  // namespace

CriterionResult poisson_oracle() {
  Timer timer;
  const double coarse = defect_against_points(8192);
  const double fine = defect_against_points(16384);
  const double ratio = coarse / fine;

  // The discrete operator inverts exactly on the cell averages themselves.
  const Grid g(40.0, 8192);
  const Field src = gaussian_cell_averages(g, 0.0, 1.0, 1.0);
  const Vector lap = negative_laplacian(inv_laplacian(src));
  const auto interior = Eigen::seqN(1, g.size() - 2);
  const double identity = (lap(interior) - src.values(interior)).cwiseAbs().maxCoeff() / src.values.maxCoeff();

  const double secs = timer.seconds();
  std::ostringstream m;
  m << "defect " << num(coarse) << " at N=8192, " << num(fine) << " at N=16384, ratio " << num(ratio)
    << "; identity defect " << num(identity);
  const bool ok = coarse <= 5e-3 && ratio >= 3.0 && ratio <= 5.0 && secs < 1.0;
  return finish("1", "poisson-oracle", ok, m, timer);
}

CriterionResult heat_kernel_oracle() {
  Timer timer;
  const Grid g(40.0, 8192);
  const Field rho0 = gaussian_cell_averages(g, 0.0, 1.0, 1.0);
  ObserverSpec os;
  os.sample_interval = 1.0;
  Observer obs(os);
  SchemeConfig cfg;
  cfg.dt_max = 1e-3;
  const Field rho = evolve_fokker_planck(rho0, ZeroPotential{}, cfg, 1.0, obs);
  const Field exact = gaussian_cell_averages(g, 0.0, heat_kernel_std(1.0, 1.0), 1.0);
  const double l1 = (rho.values - exact.values).cwiseAbs().sum() * g.dx();
  std::ostringstream m;
  m << "L1 error " << num(l1) << " at N=8192, dt=1e-3";
  return finish("2", "heat-kernel-oracle", l1 <= 1e-3 && timer.seconds() < 10.0, m, timer);
}

CriterionResult reaction_oracle() {
  Timer timer;
  std::mt19937_64 rng(20231019);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return std::pow(10.0, lo + (hi - lo) * u(rng)); };
  double worst_rel = 0.0;
  double worst_diff = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double r1 = log_uniform(-2.0, 2.0);
    const double r2 = log_uniform(-2.0, 2.0);
    const double eps = log_uniform(-2.0, 1.0);
    const double dt = log_uniform(-4.0, -1.0);
    const auto [a, b] = react_exact(r1, r2, eps, dt);
    const auto [ra, rb] = reaction_reference(r1, r2, eps, dt);
    worst_rel = std::max({worst_rel, std::abs(a - ra) / ra, std::abs(b - rb) / rb});
    worst_diff = std::max(worst_diff, std::abs((a - b) - (r1 - r2)));
  }
  std::ostringstream m;
  m << "max relative error " << num(worst_rel) << ", max change of rho1-rho2 " << num(worst_diff)
    << " over 100 tuples";
  return finish("3", "reaction-oracle", worst_rel <= 1e-9 && worst_diff <= 1e-12, m, timer);
}

namespace {

double smooth_bump(double x) {
  const double u = x / 2.0;
  return std::abs(u) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
}

}  // namespace

CriterionResult duality_convergence() {
  Timer timer;
  std::vector<double> defects;
  for (int n : {2048, 4096, 8192}) {
    const Grid g(10.0, n);
    const Field rho0 = gaussian_cell_averages(g, 0.0, 1.0, 1.0);
    const Field f0 = Field::sample_even(g, smooth_bump);
    defects.push_back(duality_defect(rho0, f0, WeakestAnalytic{8.0}, 1.0, 8, SchemeConfig{}));
  }
  const bool decreasing = defects[1] < defects[0] && defects[2] < defects[1];
  std::ostringstream m;
  m << "defect " << num(defects[0]) << ", " << num(defects[1]) << ", " << num(defects[2]) << " at N=2048/4096/8192";
  return finish("4", "duality", defects[2] <= 5e-3 && decreasing && timer.seconds() < 60.0, m, timer);
}

namespace {

struct ComparisonOutcome {
  double worst = 0.0;  // min over samples of c(u1) - c(u2)
  double t = 0.0;
  double r = 0.0;
};

ComparisonOutcome compare_concentrations(const PotentialSpec& h1, const PotentialSpec& h2) {
  const Grid g(16.0, 2048);
  const Field u1 = Field::sample_even(g, [](double x) { return normal_pdf(x, 0.0, 0.5); });
  const Field u2 = Field::sample_even(g, [](double x) { return normal_pdf(x, 0.0, 1.0); });
  ObserverSpec os;
  os.sample_interval = 0.05;
  for (int k = 1; k <= 64; ++k) os.radii.push_back(k / 8.0);
  Observer a(os);
  Observer b(os);
  evolve_fokker_planck(u1, h1, SchemeConfig{}, 4.0, a);
  evolve_fokker_planck(u2, h2, SchemeConfig{}, 4.0, b);
  ComparisonOutcome out{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    for (std::size_t j = 0; j < os.radii.size(); ++j) {
      const double d = a.concentration[k][j] - b.concentration[k][j];
      if (d < out.worst) out = {d, a.times[k], os.radii[j]};
    }
  }
  return out;
}

}  // namespace

CriterionResult mass_comparison() {
  Timer timer;
  const auto c = compare_concentrations(ZeroPotential{}, WeakestAnalytic{16.0});
  std::ostringstream m;
  m << "H1=Zero, H2=Weakest(16): min c(u1)-c(u2) = " << num(c.worst) << " at t=" << num(c.t) << ", r=" << num(c.r)
    << " (tolerance -1e-4)";
  return finish("5", "mass-comparison", c.worst >= -1e-4, m, timer);
}

CriterionResult mass_comparison_ordered() {
  Timer timer;
  const auto c = compare_concentrations(WeakestAnalytic{16.0}, ZeroPotential{});
  std::ostringstream m;
  m << "H1=Weakest(16), H2=Zero: min c(u1)-c(u2) = " << num(c.worst) << " at t=" << num(c.t) << ", r=" << num(c.r)
    << " (tolerance -1e-4)";
  return finish("5b", "mass-comparison-ordered", c.worst >= -1e-4, m, timer);
}

CriterionResult drift_ordering(bool flip_drift) {
  Timer timer;
  const double chi = kGamma;
  const Grid g(4.0, 512);
  const Field eta = build_eta(g);
  const double full = eta.total_mass();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = std::numeric_limits<double>::infinity();
  int profiles = 0;
  for (int trial = 0; trial < 200; ++trial) {
    // Remove at most a quarter of the mass: a random smooth hole plus noise.
    Field hole(g);
    const double centre = -0.5 + u(rng);
    const double width = 0.02 + 0.3 * u(rng);
    for (int i = 0; i < g.size(); ++i) {
      const double z = (g.center(i) - centre) / width;
      hole[i] = std::min(1.0, std::exp(-z * z) * (0.5 + u(rng)));
    }
    if (trial % 4 == 0) {  // one-sided extremes
      const double a = -0.5 + 0.25 * u(rng);
      for (int i = 0; i < g.size(); ++i) hole[i] = (g.center(i) < a) ? 1.0 : 0.0;
    }
    Field f(g, (eta.values.array() * (1.0 - hole.values.array())).matrix());
    const double removed = full - f.total_mass();
    if (removed > 0.25 * full) {
      const double scale = 0.25 * full / removed;
      f.values = (eta.values.array() * (1.0 - scale * hole.values.array())).matrix();
    }
    ++profiles;
    const FaceField v = drift_velocity(f, flip_drift ? -chi : chi);
    for (int j = 1; j < g.size(); ++j) {
      const double x = g.face(j);
      if (x == 0.0) continue;
      const double s = x > 0.0 ? 1.0 : -1.0;
      worst = std::min(worst, s * weakest_H_prime(kGamma, x) - s * v[j]);
    }
  }
  const double tol = kGamma * g.dx();
  std::ostringstream m;
  m << "min over " << profiles << " admissible profiles of sgn(x)(H'(x) - v(x)) = " << num(worst)
    << " (tolerance -" << num(tol) << ")" << (flip_drift ? " [drift sign flipped]" : "");
  return finish("P", "drift-ordering", worst >= -tol, m, timer);
}

CriterionResult chemotaxis_vs_fp_bound() {
  Timer timer;
  const double L = 8.0;
  const Params p = chemotaxis_params(L, kGamma);
  const Grid g = acceptance_grid(L);
  const SystemState init{0.0, build_rho1_initial(g, p.M0, L, Side::Right), build_eta(g)};
  ObserverSpec os;
  os.sample_interval = sample_interval(L, p.gamma());
  os.stop_on_quarter = true;
  for (int k = 1; k <= 64; ++k) os.radii.push_back(k * g.half_width() / 64.0);
  Observer chem(os);
  evolve_chemotaxis(init, p, SchemeConfig{}, 50.0, chem);
  const ReactionTimeResult r = quarter_mass_time(mass_series(chem));
  ObserverSpec fp_spec = os;
  fp_spec.stop_on_quarter = false;
  Observer fp(fp_spec);
  evolve_fokker_planck(init.rho1, WeakestAnalytic{p.gamma()}, SchemeConfig{}, chem.times.back(), fp);

  double worst = std::numeric_limits<double>::infinity();
  int samples = 0;
  for (std::size_t k = 0; k < chem.times.size() && k < fp.times.size(); ++k) {
    if (chem.times[k] > r.t_quarter) break;
    ++samples;
    for (std::size_t j = 0; j < os.radii.size(); ++j) {
      worst = std::min(worst, chem.concentration[k][j] - fp.concentration[k][j] + 0.25 * p.sigma);
    }
  }
  std::ostringstream m;
  m << "min c(rho1) - c(rho_FP) + sigma/4 = " << num(worst) << " over " << samples << " samples up to T_C="
    << num(r.t_quarter) << " (tolerance -1e-3)";
  return finish("6", "chemotaxis-vs-fp", r.crossed && worst >= -1e-3 * p.sigma, m, timer);
}

CriterionResult transport_scaling() {
  Timer timer;
  std::vector<std::pair<double, double>> at32;
  std::vector<double> normalised;
  std::ostringstream m;
  bool reached = true;
  for (double gamma : {16.0, 32.0}) {
    for (double L : {8.0, 16.0, 32.0}) {
      harness::ScenarioConfig cfg;
      cfg.scenario = harness::Scenario::FokkerPlanck;
      cfg.potential = harness::PotentialKind::Weakest;
      cfg.params = chemotaxis_params(L, gamma);
      cfg.t_end = 3.0 * L / gamma + 1.0;
      const auto s = harness::run(cfg);
      const double t = s.metric("transport_time");
      reached = reached && t > 0.0;
      if (t <= 0.0) continue;
      normalised.push_back(gamma * t / L);
      if (gamma == kGamma) at32.emplace_back(L, t);
    }
  }
  bool ok = reached && at32.size() == 3;
  if (ok) {
    const PowerLawFit fit = fit_power_law(at32);
    const double ratio = spread(normalised);
    m << "slope " << num(fit.slope) << " at gamma=32; gamma*t/L in [" << num(*std::min_element(normalised.begin(), normalised.end()))
      << ", " << num(*std::max_element(normalised.begin(), normalised.end())) << "], spread " << num(ratio);
    ok = std::abs(fit.slope - 1.0) <= 0.2 && ratio <= 2.0;
  } else {
    m << "transport threshold not reached in every run";
  }
  return finish("7", "transport-scaling", ok, m, timer);
}

namespace {

harness::SweepReport acceptance_sweep(harness::Scenario scenario, double chi, double t_end) {
  harness::SweepSpec spec;
  spec.base.scenario = scenario;
  spec.base.params = chemotaxis_params(4.0, chi);
  spec.base.t_end = t_end;
  spec.base.stop_on_quarter = true;
  spec.axes.push_back({"L", {4.0, 8.0, 16.0, 32.0}});
  spec.workers = harness::default_workers();
  return harness::sweep(spec);
}

}  // namespace

CriterionResult chemotactic_scaling() {
  Timer timer;
  const auto rep = acceptance_sweep(harness::Scenario::Chemotaxis, kGamma, 50.0);
  std::ostringstream m;
  std::vector<double> normalised;
  bool ok = true;
  double boundary = 0.0;
  for (const auto& p : rep.points) {
    ok = ok && p.ok && p.summary.reaction && p.summary.reaction->crossed;
    if (!p.ok) continue;
    normalised.push_back(p.summary.metric("t_quarter_gamma_over_L"));
    boundary = std::max(boundary, p.summary.metric("max_boundary_mass"));
  }
  if (!ok || rep.fits.empty()) {
    m << "sweep incomplete";
    return finish("8", "chemotactic-scaling", false, m, timer);
  }
  const double slope = rep.fits.front().fit.slope;
  const double ratio = spread(normalised);
  m << "T_C slope " << num(slope) << " (r^2 " << num(rep.fits.front().fit.r_squared) << "); T_C*gamma/L =";
  for (double v : normalised) m << " " << num(v);
  m << ", spread " << num(ratio) << "; max boundary mass " << num(boundary);
  ok = std::abs(slope - 1.0) <= 0.25 && ratio < 3.0 && boundary <= harness::kBoundaryWarnFraction * kM0 &&
       timer.seconds() <= 900.0;
  return finish("8", "chemotactic-scaling", ok, m, timer);
}

CriterionResult diffusive_bound() {
  Timer timer;
  const auto rep = acceptance_sweep(harness::Scenario::Diffusive, 0.0, 3000.0);
  std::ostringstream m;
  std::vector<double> ratios;
  double t_d32 = 0.0;
  double boundary = 0.0;
  bool ok = true;
  for (const auto& p : rep.points) {
    ok = ok && p.ok && p.summary.reaction && p.summary.reaction->crossed;
    if (!ok) break;
    ok = ok && p.summary.metric("case1_valid") == 1.0;
    ratios.push_back(p.summary.metric("case1_ratio"));
    boundary = std::max(boundary, p.summary.metric("max_boundary_mass"));
    if (p.coords[0] == 32.0) t_d32 = p.summary.reaction->t_quarter;
  }
  if (!ok) {
    m << "diffusive sweep incomplete";
    return finish("9", "diffusive-bound", false, m, timer);
  }
  harness::ScenarioConfig chem;
  chem.params = chemotaxis_params(32.0, kGamma);
  chem.t_end = 50.0;
  chem.stop_on_quarter = true;
  const double t_c32 = harness::run(chem).metric("t_quarter");
  const double lo = *std::min_element(ratios.begin(), ratios.end());
  const double ratio = spread(ratios);
  m << "case-1 ratio";
  for (double v : ratios) m << " " << num(v);
  m << ", spread " << num(ratio);
  if (!rep.fits.empty()) m << "; T_D slope " << num(rep.fits.front().fit.slope);
  m << "; T_D/T_C at L=32 = " << num(t_d32 / t_c32) << "; max boundary mass " << num(boundary);
  ok = lo > 0.0 && ratio <= 3.0 && t_d32 >= 5.0 * t_c32 && boundary <= harness::kBoundaryWarnFraction * kM0 &&
       timer.seconds() <= 1800.0;
  return finish("9", "diffusive-bound", ok, m, timer);
}

CriterionResult pass_through() {
  Timer timer;
  std::vector<double> probes;
  for (int k = 1; k <= 9; ++k) probes.push_back(6.0 / 25.0 + k * (0.5 - 6.0 / 25.0) / 10.0);
  std::vector<double> mins;
  double decay16 = 1.0;
  double within16 = 0.0;
  bool ok = true;
  for (double L : {4.0, 8.0, 16.0, 32.0}) {
    const Params p = chemotaxis_params(L, kGamma);
    const Grid g = acceptance_grid(L);
    const SystemState init{0.0, build_rho1_initial(g, p.M0, L, Side::Right), build_eta(g)};
    ObserverSpec os;
    os.sample_interval = sample_interval(L, p.gamma());
    os.stop_on_quarter = true;
    os.probes = probes;
    Observer obs(os);
    evolve_chemotaxis(init, p, SchemeConfig{}, 50.0, obs);
    const ReactionTimeResult r = quarter_mass_time(mass_series(obs));
    ok = ok && r.crossed;
    std::vector<double> values;
    for (double x : probes) values.push_back(pass_through_integral(obs, x, r.t_quarter) * p.gamma() / p.M0);
    mins.push_back(*std::min_element(values.begin(), values.end()));
    if (L == 16.0) {
      within16 = spread(values);
      // rho2 exactly at T_C.
      ObserverSpec plain;
      plain.sample_interval = os.sample_interval;
      Observer quiet(plain);
      const SystemState at_tc = evolve_chemotaxis(init, p, SchemeConfig{}, r.t_quarter, quiet);
      for (double x : probes) {
        const auto [right, left] = decay_ratio(init.rho2, at_tc.rho2, x);
        decay16 = std::min({decay16, right, left});
      }
    }
  }
  const double lo = *std::min_element(mins.begin(), mins.end());
  const double ratio = spread(mins);
  std::ostringstream m;
  m << "min pass-through*gamma/M0 by L:";
  for (double v : mins) m << " " << num(v);
  m << ", spread " << num(ratio) << " (across x at L=16: " << num(within16) << "); min decay ratio at L=16 "
    << num(decay16);
  ok = ok && lo > 0.0 && ratio <= 3.0 && decay16 <= 0.5;
  return finish("10", "pass-through", ok, m, timer);
}

namespace {

double asymmetry(const Vector& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  return scale > 0.0 ? (v - v.reverse()).cwiseAbs().maxCoeff() / scale : 0.0;
}

}  // namespace

CriterionResult conservation_and_symmetry() {
  Timer timer;
  std::ostringstream m;
  double drift_rate = 0.0;
  double min_density = std::numeric_limits<double>::infinity();
  double asym = 0.0;

  const double horizon = 2.0;
  for (double chi : {kGamma, 0.0}) {
    for (Side side : {Side::Right, Side::Symmetric}) {
      const double L = 8.0;
      const Params p = chemotaxis_params(L, chi);
      const Grid g = acceptance_grid(L);
      const SystemState init{0.0, build_rho1_initial(g, p.M0, L, side), build_eta(g)};
      ObserverSpec os;
      os.sample_interval = 0.01;
      Observer obs(os);
      const SystemState out = evolve_chemotaxis(init, p, SchemeConfig{}, horizon, obs);
      const double d0 = obs.mass1.front() - obs.mass2.front();
      for (std::size_t k = 1; k < obs.times.size(); ++k) {
        drift_rate = std::max(drift_rate, std::abs(obs.mass1[k] - obs.mass2[k] - d0) / obs.times[k]);
      }
      for (double v : obs.min_value) min_density = std::min(min_density, v);
      if (side == Side::Symmetric) {
        asym = std::max({asym, asymmetry(out.rho1.values), asymmetry(out.rho2.values)});
      }
    }
  }

  // Stationary-potential flows on even data.
  const Grid g(8.0, 1024);
  ObserverSpec os;
  os.sample_interval = 0.05;
  Observer fp_obs(os);
  const Field rho = evolve_fokker_planck(gaussian_cell_averages(g, 0.0, 1.0, 1.0), WeakestAnalytic{kGamma},
                                         SchemeConfig{}, 1.0, fp_obs);
  Observer dual_obs(os);
  const Field f = evolve_dual(harness::dual_initial_bump(g), WeakestAnalytic{kGamma}, SchemeConfig{}, 1.0, dual_obs);
  for (double v : fp_obs.min_value) min_density = std::min(min_density, v);
  for (double v : dual_obs.min_value) min_density = std::min(min_density, v);
  asym = std::max({asym, asymmetry(rho.values), asymmetry(f.values)});

  m << "mass-difference drift " << num(drift_rate / kM0) << " M0 per unit time; min density " << num(min_density)
    << "; max relative asymmetry " << num(asym);
  const bool ok = drift_rate <= 1e-8 * kM0 && min_density >= 0.0 && asym <= 1e-12 && timer.seconds() < 300.0;
  return finish("11", "conservation-symmetry", ok, m, timer);
}

std::vector<CriterionResult> run_suite(Suite suite, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<std::function<CriterionResult()>> checks{
      poisson_oracle,   heat_kernel_oracle,        reaction_oracle,           duality_convergence,
      mass_comparison,  mass_comparison_ordered,   [] { return drift_ordering(false); },
      chemotaxis_vs_fp_bound, conservation_and_symmetry};
  if (suite == Suite::Full) {
    checks.insert(checks.end(), {transport_scaling, chemotactic_scaling, diffusive_bound, pass_through});
  }
  std::vector<CriterionResult> results;
  for (const auto& check : checks) {
    CriterionResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.id = "?";
      r.name = "exception";
      r.passed = false;
      r.measured = e.what();
    }
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace chemolab::verify
