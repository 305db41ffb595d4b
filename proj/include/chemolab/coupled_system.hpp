#pragma once

#include <vector>

#include "chemolab/fp_solver.hpp"
#include "chemolab/potentials.hpp"

namespace chemolab {

struct SystemState {
  double t = 0.0;
  Field rho1;
  Field rho2;
};

/// What to record while a scenario evolves.
struct ObserverSpec {
  double sample_interval = 0.1;
  std::vector<double> radii;           // concentration profile of the primary density
  std::vector<double> probes;          // pointwise primary density at +x and -x
  std::vector<double> snapshot_times;  // full field snapshots
  double boundary_band = 1.0;          // width of the boundary-mass monitor strip
  bool stop_on_quarter = false;        // stop at the first sample with mass2 <= 3/4 mass2(0)
};

struct Snapshot {
  double t;
  Field rho1;
  Field rho2;
  FaceField v;
};

/// Time series collected at the sample times t0 + k * sample_interval.
/// Recording reads the state and never modifies it.
class Observer {
 public:
  explicit Observer(ObserverSpec spec = {}) : spec_(std::move(spec)) {}

  const ObserverSpec& spec() const { return spec_; }

  void record(double t, const Field& primary, const Field* secondary);
  void snapshot(double t, const Field& primary, const Field* secondary, const FaceField* v);

  std::vector<double> times;
  std::vector<double> mass1;
  std::vector<double> mass2;
  std::vector<double> boundary_mass;
  std::vector<double> min_value;
  std::vector<std::vector<double>> concentration;  // [sample][radius]
  std::vector<std::vector<double>> probe_right;    // [sample][probe], value at +x
  std::vector<std::vector<double>> probe_left;     // [sample][probe], value at -x
  std::vector<Snapshot> snapshots;

  /// First sample with mass2 <= 0.75 * mass2[0] has been recorded.
  bool quarter_reacted() const;
  int probe_index(double x) const;

 private:
  ObserverSpec spec_;
};

/// Per-step record of a chemotaxis run, replayed by evolve_no_reaction.
struct StepTrace {
  Grid grid{1.0, Grid::kMinCells};
  double t0 = 0.0;
  std::vector<double> dts;        // step sizes
  std::vector<double> times;      // time after each step
  std::vector<Vector> drift;      // face velocity used in each step
  std::vector<double> rho2_mass;  // rho2 mass after each step
};

/// Full system: drift from rho2, advection + diffusion of rho1, then reaction.
/// dt is recomputed every step from the current drift.
SystemState evolve_chemotaxis(SystemState state, const Params& params, const SchemeConfig& cfg, double t_end,
                              Observer& obs, StepTrace* trace = nullptr);

/// rho1 without the reaction term, driven by the rho2 trajectory of a recorded
/// chemotaxis run (identical grid and dt sequence). `state.rho1` is the common
/// initial datum; rho2 is ignored.
SystemState evolve_no_reaction(SystemState state, const StepTrace& trace, double t_end, Observer& obs);

/// Reaction-diffusion without chemotaxis (chi is ignored).
SystemState evolve_diffusive(SystemState state, const Params& params, const SchemeConfig& cfg, double t_end,
                             Observer& obs);

/// Comparison system: g1 pure heat flow, g2 *= exp(-eps g1 dt) pointwise.
/// rho1/rho2 of the state hold g1/g2.
SystemState evolve_gsystem(SystemState state, const Params& params, const SchemeConfig& cfg, double t_end,
                           Observer& obs);

/// rho_t - rho_xx + (rho H_x)_x = 0 from t = 0 to t_end.
Field evolve_fokker_planck(const Field& rho0, const PotentialSpec& spec, const SchemeConfig& cfg, double t_end,
                           Observer& obs);

/// f_t - f_xx - H_x f_x = 0 from t = 0 to t_end.
Field evolve_dual(const Field& f0, const PotentialSpec& spec, const SchemeConfig& cfg, double t_end, Observer& obs);

}  // namespace chemolab
