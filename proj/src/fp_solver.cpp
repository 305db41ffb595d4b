#include "chemolab/fp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace chemolab {

void SchemeConfig::validate() const {
  if (!(cfl_factor > 0.0 && cfl_factor <= 1.0)) throw ConfigError("cfl_factor must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw ConfigError("dt_max must be positive");
}

double suggest_dt(const FaceField& v, const SchemeConfig& cfg) {
  const double vmax = v.max_abs();
  if (vmax == 0.0) return cfg.dt_max;
  return std::min(cfg.dt_max, cfg.cfl_factor * v.grid.dx() / vmax);
}

double courant_number(const FaceField& v, double dt) {
  const int n = v.grid.size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double out_right = (i + 1 < n) ? std::max(v.values[i + 1], 0.0) : 0.0;
    const double out_left = (i > 0) ? -std::min(v.values[i], 0.0) : 0.0;
    worst = std::max(worst, out_right + out_left);
  }
  return worst * dt / v.grid.dx();
}

namespace {

void check_step(const FaceField& v, double dt) {
  if (!(dt > 0.0)) throw StepSizeError("time step must be positive");
  const double c = courant_number(v, dt);
  if (c > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "CFL violation: Courant number " << c << " > 1 (dt = " << dt << ")";
    throw StepSizeError(msg.str());
  }
}

void check_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw ConfigError("fields live on different grids");
}

}  // namespace

namespace detail {

void advect_inplace(Vector& rho, const Vector& v, double dt_over_dx, Vector& flux) {
  const Eigen::Index n = rho.size();
  flux.resize(n + 1);
  flux[0] = 0.0;
  flux[n] = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    const double vj = v[j];
    flux[j] = vj > 0.0 ? vj * rho[j - 1] : vj * rho[j];
  }
  for (Eigen::Index i = 0; i < n; ++i) rho[i] -= dt_over_dx * (flux[i + 1] - flux[i]);
}

void diffuse_inplace(Vector& rho, double r, Vector& scratch) {
  // (I - r D) x = rho, D the no-flux second difference. Rows are
  // diagonally dominant, so no pivoting is needed.
  const Eigen::Index n = rho.size();
  scratch.resize(n);
  const double off = -r;
  double diag = 1.0 + r;
  scratch[0] = off / diag;
  rho[0] /= diag;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double d = (i + 1 < n ? 1.0 + 2.0 * r : 1.0 + r) - off * scratch[i - 1];
    scratch[i] = off / d;
    rho[i] = (rho[i] - off * rho[i - 1]) / d;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) rho[i] -= scratch[i] * rho[i + 1];
}

void transport_dual_inplace(Vector& f, const Vector& v, double dt_over_dx, Vector& scratch) {
  const Eigen::Index n = f.size();
  scratch = f;
  for (Eigen::Index i = 0; i < n; ++i) {
    double change = 0.0;
    if (i + 1 < n) change += std::max(v[i + 1], 0.0) * (scratch[i + 1] - scratch[i]);
    if (i > 0) change += std::min(v[i], 0.0) * (scratch[i] - scratch[i - 1]);
    f[i] += dt_over_dx * change;
  }
}

void react_inplace(Vector& rho1, Vector& rho2, double eps, double dt) {
  if (eps == 0.0) return;
  for (Eigen::Index i = 0; i < rho1.size(); ++i) {
    const auto [a, b] = react_exact(rho1[i], rho2[i], eps, dt);
    rho1[i] = a;
    rho2[i] = b;
  }
}

}  // namespace detail

std::pair<double, double> react_exact(double rho1, double rho2, double eps, double dt) {
  if (eps == 0.0 || dt == 0.0 || rho1 <= 0.0 || rho2 <= 0.0) return {rho1, rho2};
  // With gap = large - small conserved, the smaller density obeys
  //   s' = -eps s (s + gap)  =>  s(t) = s / (1 + eps t l phi(eps gap t)),
  // phi(z) = expm1(z)/z, l = s + gap. phi is evaluated directly so the
  // equal-density limit s/(1 + eps s t) needs no special branch.
  const bool first_smaller = rho1 <= rho2;
  const double small = first_smaller ? rho1 : rho2;
  const double large = first_smaller ? rho2 : rho1;
  const double gap = large - small;
  const double z = eps * gap * dt;
  const double phi = (z == 0.0) ? 1.0 : std::expm1(z) / z;
  const double small_new = small / (1.0 + eps * dt * large * phi);
  const double large_new = small_new + gap;
  return first_smaller ? std::pair{small_new, large_new} : std::pair{large_new, small_new};
}

Field step_advection(const Field& rho, const FaceField& v, double dt) {
  check_same_grid(rho.grid, v.grid);
  check_step(v, dt);
  Field out = rho;
  Vector flux;
  detail::advect_inplace(out.values, v.values, dt / rho.grid.dx(), flux);
  return out;
}

Field step_diffusion(const Field& rho, double dt) {
  if (!(dt > 0.0)) throw StepSizeError("time step must be positive");
  Field out = rho;
  Vector scratch;
  const double dx = rho.grid.dx();
  detail::diffuse_inplace(out.values, dt / (dx * dx), scratch);
  return out;
}

std::pair<Field, Field> step_reaction(const Field& rho1, const Field& rho2, double eps, double dt) {
  check_same_grid(rho1.grid, rho2.grid);
  std::pair<Field, Field> out{rho1, rho2};
  detail::react_inplace(out.first.values, out.second.values, eps, dt);
  return out;
}

Field step_dual(const Field& f, const FaceField& v, double dt) {
  check_same_grid(f.grid, v.grid);
  check_step(v, dt);
  Field out = f;
  Vector scratch;
  const double dx = f.grid.dx();
  detail::transport_dual_inplace(out.values, v.values, dt / dx, scratch);
  detail::diffuse_inplace(out.values, dt / (dx * dx), scratch);
  return out;
}

}  // namespace chemolab
