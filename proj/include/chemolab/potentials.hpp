#pragma once

#include <variant>

#include "chemolab/nonlocal.hpp"

namespace chemolab {

/// Stationary piecewise-quadratic potential giving the weakest admissible
/// inward pull for attractant profiles that keep 3/4 of their mass.
struct WeakestAnalytic {
  double gamma = 0.0;
};

/// chi * (-Laplacian)^{-1} rho2 for a given nonnegative rho2.
struct FromField {
  double chi = 0.0;
  Field rho2;
};

struct ZeroPotential {};

using PotentialSpec = std::variant<WeakestAnalytic, FromField, ZeroPotential>;

/// H(x) = -gamma x/3 for x >= 1/2 and -(gamma/24)(3 - 4x + 12x^2) on [0, 1/2],
/// mirrored for x < 0. Values are taken literally; they differ from
/// gamma * (-Laplacian)^{-1} of the shifted indicator by a constant on each
/// half line, which does not affect any drift.
double weakest_H(double gamma, double x);

/// dH/dx. Returns 0 at the kink x = 0.
double weakest_H_prime(double gamma, double x);

/// Drift dH/dx at every face of `grid`. The result is odd for every even
/// potential, bit for bit.
FaceField potential_gradient_faces(const PotentialSpec& spec, const Grid& grid);

/// Potential values at cell centers (FromField uses inv_laplacian scaled by chi).
Field potential_values(const PotentialSpec& spec, const Grid& grid);

void validate(const PotentialSpec& spec);

}  // namespace chemolab
