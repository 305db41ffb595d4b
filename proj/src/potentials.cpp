#include "chemolab/potentials.hpp"

#include <cmath>

namespace chemolab {

double weakest_H(double gamma, double x) {
  const double r = std::abs(x);
  if (r >= 0.5) return -gamma * r / 3.0;
  return -(gamma / 24.0) * (3.0 - 4.0 * r + 12.0 * r * r);
}

double weakest_H_prime(double gamma, double x) {
  if (x == 0.0) return 0.0;
  const double r = std::abs(x);
  const double radial = (r > 0.5) ? -gamma / 3.0 : gamma / 6.0 - gamma * r;
  return x > 0.0 ? radial : -radial;
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

void validate(const PotentialSpec& spec) {
  std::visit(overloaded{
                 [](const WeakestAnalytic& w) {
                   if (!(w.gamma >= 0.0)) throw ConfigError("weakest potential requires gamma >= 0");
                 },
                 [](const FromField& f) {
                   if (!(f.chi >= 0.0)) throw ConfigError("field potential requires chi >= 0");
                   if (!f.rho2.nonnegative()) throw ConfigError("field potential requires rho2 >= 0");
                 },
                 [](const ZeroPotential&) {},
             },
             spec);
}

FaceField potential_gradient_faces(const PotentialSpec& spec, const Grid& grid) {
  return std::visit(overloaded{
                        [&](const WeakestAnalytic& w) {
                          FaceField v(grid);
                          const int n = grid.size();
                          for (int j = n / 2; j <= n; ++j) {
                            v.values[j] = weakest_H_prime(w.gamma, grid.face(j));
                            v.values[n - j] = -v.values[j];
                          }
                          v.values[n / 2] = 0.0;
                          return v;
                        },
                        [&](const FromField& f) {
                          if (!(f.rho2.grid == grid)) throw ConfigError("field potential grid mismatch");
                          return drift_velocity(f.rho2, f.chi);
                        },
                        [&](const ZeroPotential&) { return FaceField(grid); },
                    },
                    spec);
}

Field potential_values(const PotentialSpec& spec, const Grid& grid) {
  return std::visit(overloaded{
                        [&](const WeakestAnalytic& w) {
                          return Field::sample_even(grid, [g = w.gamma](double x) { return weakest_H(g, x); });
                        },
                        [&](const FromField& f) {
                          Field u = inv_laplacian(f.rho2);
                          u.values *= f.chi;
                          return u;
                        },
                        [&](const ZeroPotential&) { return Field(grid); },
                    },
                    spec);
}

}  // namespace chemolab
