#include "verify/oracles.hpp"

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

namespace chemolab::verify {

double normal_pdf(double x, double mean, double std_dev) {
  const double z = (x - mean) / std_dev;
  return std::exp(-0.5 * z * z) / (std_dev * std::sqrt(2.0 * std::numbers::pi));
}

double normal_cdf(double x, double mean, double std_dev) {
  return 0.5 * std::erfc(-(x - mean) / (std_dev * std::numbers::sqrt2));
}

Field gaussian_cell_averages(const Grid& grid, double mean, double std_dev, double mass) {
  Field f(grid);
  for (int i = 0; i < grid.size(); ++i) {
    const double a = grid.face(i);
    const double b = grid.face(i + 1);
    // Difference of upper tails is more accurate on the right half.
    const double p = (a > mean) ? normal_cdf(-(a - mean), 0.0, std_dev) - normal_cdf(-(b - mean), 0.0, std_dev)
                                : normal_cdf(b, mean, std_dev) - normal_cdf(a, mean, std_dev);
    f[i] = mass * p / grid.dx();
  }
  return f;
}

Field gaussian_point_values(const Grid& grid, double mean, double std_dev, double mass) {
  Field f(grid);
  for (int i = 0; i < grid.size(); ++i) f[i] = mass * normal_pdf(grid.center(i), mean, std_dev);
  return f;
}

double heat_kernel_std(double s0, double t) { return std::sqrt(s0 * s0 + 2.0 * t); }

std::pair<double, double> reaction_reference(double rho1, double rho2, double eps, double dt) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  // Logarithmic variables keep the relative accuracy uniform when one
  // density decays by many orders of magnitude.
  State y{std::log(rho1), std::log(rho2)};
  auto rhs = [eps](const State& s, State& dsdt, double) {
    dsdt[0] = -eps * std::exp(s[1]);
    dsdt[1] = -eps * std::exp(s[0]);
  };
  auto stepper = odeint::make_controlled(1e-15, 1e-15, odeint::runge_kutta_fehlberg78<State>());
  odeint::integrate_adaptive(stepper, rhs, y, 0.0, dt, dt / 1000.0);
  return {std::exp(y[0]), std::exp(y[1])};
}

double quadrature(const std::function<double(double)>& fn, double a, double b, int panels) {
  static constexpr std::array<double, 5> nodes{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                               0.9061798459386640};
  static constexpr std::array<double, 5> weights{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                 0.2369268850561891, 0.2369268850561891};
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < nodes.size(); ++k) sum += weights[k] * fn(mid + 0.5 * h * nodes[k]);
  }
  return 0.5 * h * sum;
}

}  // namespace chemolab::verify
