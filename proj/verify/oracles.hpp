#pragma once

#include <functional>
#include <utility>

#include "chemolab/grid.hpp"

// Reference solutions built independently of the solver code paths.
namespace chemolab::verify {

double normal_pdf(double x, double mean, double std_dev);
double normal_cdf(double x, double mean, double std_dev);

/// Exact cell averages of mass * N(mean, std_dev^2).
Field gaussian_cell_averages(const Grid& grid, double mean, double std_dev, double mass);

/// Point values of mass * N(mean, std_dev^2) at the cell centers.
Field gaussian_point_values(const Grid& grid, double mean, double std_dev, double mass);

/// Heat kernel: N(0, s0^2) evolved by u_t = u_xx for time t has variance s0^2 + 2t.
double heat_kernel_std(double s0, double t);

/// rho1' = rho2' = -eps rho1 rho2 for positive data, integrated in log
/// variables with an adaptive Runge-Kutta-Fehlberg 7(8) stepper at 1e-15.
std::pair<double, double> reaction_reference(double rho1, double rho2, double eps, double dt);

/// Composite Gauss-Legendre (5 nodes) on `panels` panels of [a, b].
double quadrature(const std::function<double(double)>& fn, double a, double b, int panels);

}  // namespace chemolab::verify
