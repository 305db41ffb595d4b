#include "chemolab/coupled_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chemolab {

void Observer::record(double t, const Field& primary, const Field* secondary) {
  const Grid& g = primary.grid;
  times.push_back(t);
  mass1.push_back(primary.total_mass());
  mass2.push_back(secondary ? secondary->total_mass() : 0.0);

  const double hw = g.half_width();
  const double band = std::min(spec_.boundary_band, hw);
  boundary_mass.push_back(integrate(primary, -hw, -hw + band) + integrate(primary, hw - band, hw));

  double lo = primary.values.minCoeff();
  if (secondary) lo = std::min(lo, secondary->values.minCoeff());
  min_value.push_back(lo);

  if (!spec_.radii.empty()) concentration.push_back(concentration_profile(primary, spec_.radii));
  if (!spec_.probes.empty()) {
    std::vector<double> right, left;
    right.reserve(spec_.probes.size());
    left.reserve(spec_.probes.size());
    for (double x : spec_.probes) {
      right.push_back(value_at(primary, x));
      left.push_back(value_at(primary, -x));
    }
    probe_right.push_back(std::move(right));
    probe_left.push_back(std::move(left));
  }
}

void Observer::snapshot(double t, const Field& primary, const Field* secondary, const FaceField* v) {
  snapshots.push_back(Snapshot{t, primary, secondary ? *secondary : Field(primary.grid),
                               v ? *v : FaceField(primary.grid)});
}

bool Observer::quarter_reacted() const { return !mass2.empty() && mass2.back() <= 0.75 * mass2.front(); }

int Observer::probe_index(double x) const {
  const auto& p = spec_.probes;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (std::abs(p[k] - x) <= 1e-12 * std::max(1.0, std::abs(x))) return static_cast<int>(k);
  }
  return -1;
}

namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// Drives an evolution from t0 to t_end, cutting steps so that every sample
// and snapshot time is hit exactly.
//   suggest(): preferred dt for the next step
//   advance(dt, t_after): apply one step
//   observe(t, snapshot): record the current state
// Returns the final time.
template <class Suggest, class Advance, class Observe>
double drive(double t0, double t_end, Observer& obs, Suggest&& suggest, Advance&& advance, Observe&& observe) {
  const ObserverSpec& spec = obs.spec();
  if (!(spec.sample_interval > 0.0)) throw ConfigError("observer sample_interval must be positive");
  if (t_end < t0) throw ConfigError("t_end precedes the current time");

  std::vector<double> snaps;
  for (double s : spec.snapshot_times) {
    if (s >= t0 - 1e-12 && s <= t_end + 1e-12) snaps.push_back(std::clamp(s, t0, t_end));
  }
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;

  auto take_snapshots = [&](double t) {
    while (next_snap < snaps.size() && near(snaps[next_snap], t)) {
      observe(t, true);
      ++next_snap;
    }
  };

  long k = 0;
  double t = t0;
  observe(t, false);
  take_snapshots(t);
  if (spec.stop_on_quarter && obs.quarter_reacted() && obs.times.size() > 1) return t;

  while (t < t_end && !near(t, t_end)) {
    const double next_sample = std::min(t0 + (k + 1) * spec.sample_interval, t_end);
    double next_stop = next_sample;
    if (next_snap < snaps.size()) next_stop = std::min(next_stop, snaps[next_snap]);

    double dt = suggest();
    bool clamped = false;
    if (t + dt >= next_stop || near(t + dt, next_stop)) {
      dt = next_stop - t;
      clamped = true;
    }
    const double t_after = clamped ? next_stop : t + dt;
    advance(dt, t_after);
    t = t_after;

    if (near(t, next_sample)) {
      ++k;
      observe(t, false);
      if (spec.stop_on_quarter && obs.quarter_reacted()) {
        take_snapshots(t);
        break;
      }
    }
    take_snapshots(t);
  }
  return t;
}

struct Workspace {
  Vector a;
  Vector b;
};

}  // namespace

SystemState evolve_chemotaxis(SystemState state, const Params& params, const SchemeConfig& cfg, double t_end,
                              Observer& obs, StepTrace* trace) {
  cfg.validate();
  if (!(state.rho1.grid == state.rho2.grid)) throw ConfigError("rho1 and rho2 grids differ");
  const Grid grid = state.rho1.grid;
  const double dx = grid.dx();
  const bool drift_on = params.chi > 0.0;
  FaceField v(grid);
  Workspace ws;

  auto refresh_drift = [&] {
    if (drift_on) v = drift_velocity(state.rho2, params.chi);
  };

  if (trace) {
    trace->grid = grid;
    trace->t0 = state.t;
    trace->dts.clear();
    trace->times.clear();
    trace->drift.clear();
    trace->rho2_mass.clear();
  }

  state.t = drive(
      state.t, t_end, obs,
      [&] {
        refresh_drift();
        return suggest_dt(v, cfg);
      },
      [&](double dt, double t_after) {
        if (drift_on) {
          if (courant_number(v, dt) > 1.0 + 1e-12) throw StepSizeError("CFL violation in chemotaxis step");
          detail::advect_inplace(state.rho1.values, v.values, dt / dx, ws.a);
        }
        detail::diffuse_inplace(state.rho1.values, dt / (dx * dx), ws.b);
        detail::react_inplace(state.rho1.values, state.rho2.values, params.eps, dt);
        if (trace) {
          trace->dts.push_back(dt);
          trace->times.push_back(t_after);
          trace->drift.push_back(v.values);
          trace->rho2_mass.push_back(state.rho2.total_mass());
        }
      },
      [&](double t, bool snap) {
        if (snap) {
          refresh_drift();
          obs.snapshot(t, state.rho1, &state.rho2, &v);
        } else {
          obs.record(t, state.rho1, &state.rho2);
        }
      });
  return state;
}

SystemState evolve_no_reaction(SystemState state, const StepTrace& trace, double t_end, Observer& obs) {
  const Grid grid = state.rho1.grid;
  if (!(trace.grid == grid)) throw ConfigError("step trace was recorded on a different grid");
  if (!near(trace.t0, state.t)) throw ConfigError("step trace starts at a different time");
  const double dx = grid.dx();
  const ObserverSpec& spec = obs.spec();
  Workspace ws;

  const double rho2_mass0 = state.rho2.values.size() == grid.size() ? state.rho2.total_mass() : 0.0;
  auto observe = [&](double t, double rho2_mass) {
    obs.record(t, state.rho1, nullptr);
    obs.mass2.back() = rho2_mass;
  };

  long k = 0;
  const double t0 = state.t;
  observe(state.t, rho2_mass0);
  for (std::size_t s = 0; s < trace.times.size(); ++s) {
    const double t = trace.times[s];
    if (t > t_end && !near(t, t_end)) break;
    const double dt = trace.dts[s];
    detail::advect_inplace(state.rho1.values, trace.drift[s], dt / dx, ws.a);
    detail::diffuse_inplace(state.rho1.values, dt / (dx * dx), ws.b);
    state.t = t;
    const double next_sample = std::min(t0 + (k + 1) * spec.sample_interval, t_end);
    if (near(t, next_sample)) {
      ++k;
      observe(t, trace.rho2_mass[s]);
    }
  }
  if (state.t < t_end && !near(state.t, t_end)) {
    throw ConfigError("step trace ends before t_end");
  }
  return state;
}

SystemState evolve_diffusive(SystemState state, const Params& params, const SchemeConfig& cfg, double t_end,
                             Observer& obs) {
  Params p = params;
  p.chi = 0.0;
  return evolve_chemotaxis(std::move(state), p, cfg, t_end, obs);
}

SystemState evolve_gsystem(SystemState state, const Params& params, const SchemeConfig& cfg, double t_end,
                           Observer& obs) {
  cfg.validate();
  const Grid grid = state.rho1.grid;
  const double dx = grid.dx();
  Workspace ws;
  state.t = drive(
      state.t, t_end, obs, [&] { return cfg.dt_max; },
      [&](double dt, double) {
        detail::diffuse_inplace(state.rho1.values, dt / (dx * dx), ws.b);
        if (params.eps != 0.0) {
          state.rho2.values.array() *= (-params.eps * dt * state.rho1.values.array()).exp();
        }
      },
      [&](double t, bool snap) {
        if (snap) {
          obs.snapshot(t, state.rho1, &state.rho2, nullptr);
        } else {
          obs.record(t, state.rho1, &state.rho2);
        }
      });
  return state;
}

Field evolve_fokker_planck(const Field& rho0, const PotentialSpec& spec, const SchemeConfig& cfg, double t_end,
                           Observer& obs) {
  cfg.validate();
  validate(spec);
  const Grid grid = rho0.grid;
  const double dx = grid.dx();
  const FaceField v = potential_gradient_faces(spec, grid);
  const bool drift_on = v.max_abs() > 0.0;
  const double dt_pref = suggest_dt(v, cfg);
  Field rho = rho0;
  Workspace ws;
  drive(
      0.0, t_end, obs, [&] { return dt_pref; },
      [&](double dt, double) {
        if (drift_on) detail::advect_inplace(rho.values, v.values, dt / dx, ws.a);
        detail::diffuse_inplace(rho.values, dt / (dx * dx), ws.b);
      },
      [&](double t, bool snap) {
        if (snap) {
          obs.snapshot(t, rho, nullptr, &v);
        } else {
          obs.record(t, rho, nullptr);
        }
      });
  return rho;
}

Field evolve_dual(const Field& f0, const PotentialSpec& spec, const SchemeConfig& cfg, double t_end, Observer& obs) {
  cfg.validate();
  validate(spec);
  const Grid grid = f0.grid;
  const double dx = grid.dx();
  const FaceField v = potential_gradient_faces(spec, grid);
  const bool drift_on = v.max_abs() > 0.0;
  const double dt_pref = suggest_dt(v, cfg);
  Field f = f0;
  Workspace ws;
  drive(
      0.0, t_end, obs, [&] { return dt_pref; },
      [&](double dt, double) {
        if (drift_on) detail::transport_dual_inplace(f.values, v.values, dt / dx, ws.a);
        detail::diffuse_inplace(f.values, dt / (dx * dx), ws.b);
      },
      [&](double t, bool snap) {
        if (snap) {
          obs.snapshot(t, f, nullptr, &v);
        } else {
          obs.record(t, f, nullptr);
        }
      });
  return f;
}

}  // namespace chemolab
