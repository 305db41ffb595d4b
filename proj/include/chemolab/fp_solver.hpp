#pragma once

#include <utility>

#include "chemolab/nonlocal.hpp"

namespace chemolab {

/// Time-stepping controls. Each step is Lie-split: advection, then implicit
/// Euler diffusion, then the exact reaction update.
struct SchemeConfig {
  double cfl_factor = 0.4;
  double dt_max = 0.01;

  void validate() const;
};

/// Largest stable explicit step: min(dt_max, cfl_factor * dx / max|v|).
double suggest_dt(const FaceField& v, const SchemeConfig& cfg);

/// Courant number dt/dx * max_i (v+_{i+1/2} - v-_{i-1/2}); the upwind update
/// is monotone iff this is <= 1.
double courant_number(const FaceField& v, double dt);

/// Conservative donor-cell update of rho_t + (v rho)_x = 0 with zero flux
/// through the boundary faces. Throws StepSizeError if the step is not monotone.
Field step_advection(const Field& rho, const FaceField& v, double dt);

/// Backward Euler for rho_t = rho_xx with no-flux boundaries (Thomas algorithm).
Field step_diffusion(const Field& rho, double dt);

/// Exact solution of rho1' = rho2' = -eps rho1 rho2 over dt in every cell.
std::pair<Field, Field> step_reaction(const Field& rho1, const Field& rho2, double eps, double dt);

/// Exact pointwise reaction update; returns (rho1, rho2) after dt.
std::pair<double, double> react_exact(double rho1, double rho2, double eps, double dt);

/// One step of f_t = f_xx + v f_x (v = dH/dx): upwind transport of f along +v,
/// then implicit diffusion. Constants are preserved exactly.
Field step_dual(const Field& f, const FaceField& v, double dt);

namespace detail {

// In-place kernels used by the evolution loops.
void advect_inplace(Vector& rho, const Vector& v, double dt_over_dx, Vector& flux);
void diffuse_inplace(Vector& rho, double r, Vector& scratch);
void transport_dual_inplace(Vector& f, const Vector& v, double dt_over_dx, Vector& scratch);
void react_inplace(Vector& rho1, Vector& rho2, double eps, double dt);

}  // namespace detail

}  // namespace chemolab
