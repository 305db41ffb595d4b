#include "chemolab/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chemolab {

MassSeries mass_series(const Observer& obs) { return MassSeries{obs.times, obs.mass1, obs.mass2}; }

ReactionTimeResult quarter_mass_time(const MassSeries& series) {
  if (series.times.empty() || series.mass2.size() != series.times.size()) {
    throw DomainError("mass series must be nonempty with matching columns");
  }
  const double m0 = series.mass2.front();
  const double target = 0.75 * m0;
  ReactionTimeResult out;
  out.fraction_at_end = m0 > 0.0 ? series.mass2.back() / m0 : 1.0;
  out.t_quarter = series.times.back();
  if (!(m0 > 0.0)) return out;
  for (std::size_t k = 1; k < series.times.size(); ++k) {
    const double m_prev = series.mass2[k - 1];
    const double m_next = series.mass2[k];
    if (m_next <= target) {
      const double t_prev = series.times[k - 1];
      const double t_next = series.times[k];
      const double drop = m_prev - m_next;
      const double frac = drop > 0.0 ? (m_prev - target) / drop : 1.0;
      out.t_quarter = t_prev + std::clamp(frac, 0.0, 1.0) * (t_next - t_prev);
      out.crossed = true;
      return out;
    }
  }
  return out;
}

double duality_defect(const Field& rho0, const Field& f0, const PotentialSpec& spec, double t, int n_samples,
                      const SchemeConfig& cfg) {
  if (!(rho0.grid == f0.grid)) throw ConfigError("duality pairing needs a common grid");
  if (t <= 0.0 || n_samples < 1) return 0.0;

  ObserverSpec os;
  os.sample_interval = t / n_samples;
  for (int k = 0; k <= n_samples; ++k) os.snapshot_times.push_back(t * k / n_samples);

  Observer forward(os);
  Observer dual(os);
  evolve_fokker_planck(rho0, spec, cfg, t, forward);
  evolve_dual(f0, spec, cfg, t, dual);
  if (forward.snapshots.size() != static_cast<std::size_t>(n_samples + 1) ||
      dual.snapshots.size() != static_cast<std::size_t>(n_samples + 1)) {
    throw ConfigError("duality pairing: missing snapshots");
  }

  const double dx = rho0.grid.dx();
  auto pairing = [&](int k) {
    return forward.snapshots[k].rho1.values.dot(dual.snapshots[n_samples - k].rho1.values) * dx;
  };
  const double p0 = pairing(0);
  double worst = 0.0;
  for (int k = 1; k <= n_samples; ++k) worst = std::max(worst, std::abs(pairing(k) - p0) / std::abs(p0));
  return worst;
}

double pass_through_integral(const Observer& obs, double x, double t_end) {
  const int p = obs.probe_index(x);
  if (p < 0) throw ConfigError("pass-through integral requested at an unrecorded location");
  const auto& t = obs.times;
  if (t.empty()) return 0.0;
  if (t_end < 0.0) t_end = t.back();
  auto value = [&](std::size_t k) { return obs.probe_right[k][p] + obs.probe_left[k][p]; };
  double sum = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (t[k - 1] >= t_end) break;
    const double hi = std::min(t[k], t_end);
    const double w = (hi - t[k - 1]) / (t[k] - t[k - 1]);
    const double v_hi = value(k - 1) + w * (value(k) - value(k - 1));
    sum += 0.5 * (value(k - 1) + v_hi) * (hi - t[k - 1]);
  }
  return sum;
}

std::pair<double, double> decay_ratio(const Field& rho2_initial, const Field& rho2_final, double x) {
  const double r0 = value_at(rho2_initial, x);
  const double l0 = value_at(rho2_initial, -x);
  if (!(r0 > 0.0) || !(l0 > 0.0)) throw DomainError("decay ratio undefined where rho2(., 0) vanishes");
  return {value_at(rho2_final, x) / r0, value_at(rho2_final, -x) / l0};
}

double first_concentration_time(const Observer& obs, double r, double threshold) {
  const auto& radii = obs.spec().radii;
  int idx = -1;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (std::abs(radii[k] - r) <= 1e-12 * std::max(1.0, r)) idx = static_cast<int>(k);
  }
  if (idx < 0) throw ConfigError("concentration radius was not recorded");
  const auto& t = obs.times;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double c = obs.concentration[k][idx];
    if (c >= threshold) {
      if (k == 0) return t[0];
      const double c_prev = obs.concentration[k - 1][idx];
      const double frac = (threshold - c_prev) / (c - c_prev);
      return t[k - 1] + std::clamp(frac, 0.0, 1.0) * (t[k] - t[k - 1]);
    }
  }
  return -1.0;
}

namespace {

// min of f over cells whose centers satisfy |x| <= radius (infinity if none).
double min_within(const Field& f, double radius) {
  double lo = std::numeric_limits<double>::infinity();
  for (int i = 0; i < f.size(); ++i) {
    if (std::abs(f.grid.center(i)) <= radius) lo = std::min(lo, f.values[i]);
  }
  return lo;
}

}  // namespace

double dual_spreading_constant(const Field& f, double gamma, double t) {
  const double reach = 1.0 + gamma * t;
  auto ok = [&](double c) { return min_within(f, reach / c) >= 1.0 / c; };
  double hi = 1.0;
  while (!ok(hi)) {
    hi *= 2.0;
    if (hi > 1e12) return std::numeric_limits<double>::infinity();
  }
  if (hi == 1.0) return 1.0;
  double lo = hi / 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw DomainError("power-law fit needs at least 3 points");
  const std::size_t n = points.size();
  Eigen::MatrixXd design(n, 2);
  Vector rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [x, y] = points[i];
    if (!(x > 0.0) || !(y > 0.0)) throw DomainError("power-law fit needs positive coordinates");
    design(i, 0) = std::log(x);
    design(i, 1) = 1.0;
    rhs[i] = std::log(y);
  }
  const Vector coef = design.colPivHouseholderQr().solve(rhs);
  const Vector resid = rhs - design * coef;
  const double ss_tot = (rhs.array() - rhs.mean()).square().sum();
  PowerLawFit fit;
  fit.slope = coef[0];
  fit.intercept = coef[1];
  fit.r_squared = ss_tot > 0.0 ? 1.0 - resid.squaredNorm() / ss_tot : 1.0;
  return fit;
}

DiffusiveDiagnostics diffusive_bound_diagnostics(const ReactionTimeResult& result, const Params& params) {
  if (!result.crossed) throw DomainError("diffusive diagnostics need a crossed reaction time");
  DiffusiveDiagnostics d;
  d.eps_M0 = params.eps * params.M0;
  const double log_arg = params.M0 * params.eps * params.L;
  d.case1_regime = d.eps_M0 > 1.0;
  d.case1_valid = log_arg > 1.0;
  d.case1_ratio = d.case1_valid ? result.t_quarter * std::log(log_arg) / (params.L * params.L) : 0.0;
  d.case2_ratio = result.t_quarter * d.eps_M0 * d.eps_M0;
  return d;
}

}  // namespace chemolab
