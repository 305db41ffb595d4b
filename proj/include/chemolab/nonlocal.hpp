#pragma once

#include "chemolab/grid.hpp"

namespace chemolab {

/// Values on the n_cells + 1 faces of a grid (boundary faces included).
struct FaceField {
  Grid grid;
  Vector values;

  explicit FaceField(const Grid& g) : grid(g), values(Vector::Zero(g.size() + 1)) {}
  FaceField(const Grid& g, Vector v);

  double operator[](int j) const { return values[j]; }
  double max_abs() const { return values.cwiseAbs().maxCoeff(); }
};

/// Potential u = -1/2 * sum_j |x - x_j| m_j of the cell masses m_j, i.e. the
/// whole-line Green's function of -d^2/dx^2 with no affine correction.
/// O(N) via running zeroth and first moments.
Field inv_laplacian(const Field& source);

/// Chemotactic velocity chi * d/dx (-Laplacian)^{-1} rho2 at every face:
/// (chi/2) * (mass right of the face - mass left of the face).
/// Left and right masses are accumulated from opposite ends, so an even rho2
/// yields an exactly odd face field.
FaceField drift_velocity(const Field& rho2, double chi);

/// Discrete -u'' at interior cells (second difference); boundary cells are 0.
Vector negative_laplacian(const Field& u);

}  // namespace chemolab
