#pragma once

#include <span>
#include <utility>
#include <vector>

#include "chemolab/coupled_system.hpp"

namespace chemolab {

struct MassSeries {
  std::vector<double> times;
  std::vector<double> mass1;
  std::vector<double> mass2;
};

MassSeries mass_series(const Observer& obs);

struct ReactionTimeResult {
  double t_quarter = 0.0;        // interpolated crossing of 0.75 * mass2(0); last time if not crossed
  double fraction_at_end = 1.0;  // mass2(end) / mass2(0)
  bool crossed = false;
};

/// First time mass2 reaches 3/4 of its initial value, linear in t between samples.
ReactionTimeResult quarter_mass_time(const MassSeries& series);

/// Max over s in {0, t/n, ..., t} of |P(s) - P(0)| / |P(0)|, where
/// P(s) = sum rho(s) f(t - s) dx pairs the forward flow with the dual flow.
double duality_defect(const Field& rho0, const Field& f0, const PotentialSpec& spec, double t, int n_samples,
                      const SchemeConfig& cfg);

/// Trapezoid-rule integral over recorded samples of rho1(x) + rho1(-x) on
/// [times.front(), t_end] (t_end < 0 means the whole record). The probe
/// location must have been requested in the observer spec.
double pass_through_integral(const Observer& obs, double x, double t_end = -1.0);

/// (rho2(x,T)/rho2(x,0), rho2(-x,T)/rho2(-x,0)).
std::pair<double, double> decay_ratio(const Field& rho2_initial, const Field& rho2_final, double x);

/// First time the recorded concentration at radius r reaches `threshold`
/// (linear in t between samples); negative if never reached. r must be one of
/// the observer radii.
double first_concentration_time(const Observer& obs, double r, double threshold);

/// Smallest C >= 1 with f(x) >= 1/C for all |x| <= (1 + gamma t)/C, found by
/// bisection on a monotone criterion. Measures the spreading constant of a
/// dual solution started from a centered bump.
double dual_spreading_constant(const Field& f, double gamma, double t);

struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log y against log x.
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> points);

struct DiffusiveDiagnostics {
  double eps_M0 = 0.0;
  double case1_ratio = 0.0;  // T_D * log(M0 eps L) / L^2
  double case2_ratio = 0.0;  // T_D * (eps M0)^2
  bool case1_regime = false; // eps M0 > 1
  bool case1_valid = false;  // log argument > 1
};

DiffusiveDiagnostics diffusive_bound_diagnostics(const ReactionTimeResult& result, const Params& params);

}  // namespace chemolab
