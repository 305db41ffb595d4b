#include "chemolab/nonlocal.hpp"

#include <string>

namespace chemolab {

FaceField::FaceField(const Grid& g, Vector v) : grid(g), values(std::move(v)) {
  if (values.size() != g.size() + 1) {
    throw ConfigError("face field size " + std::to_string(values.size()) + " does not match grid");
  }
}

Field inv_laplacian(const Field& source) {
  const Grid& g = source.grid;
  const int n = g.size();
  const double dx = g.dx();

  double total_mass = 0.0;
  double total_moment = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m = source.values[i] * dx;
    total_mass += m;
    total_moment += m * g.center(i);
  }

  // For cell i with A = mass strictly left, B = first moment strictly left:
  //   sum_j |x_i - x_j| m_j = x_i (2A - M) - (2B - P) + |0| m_i.
  Field u(g);
  double left_mass = 0.0;
  double left_moment = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = g.center(i);
    const double m = source.values[i] * dx;
    const double right_mass = total_mass - left_mass - m;
    const double right_moment = total_moment - left_moment - m * x;
    const double abs_moment = x * (left_mass - right_mass) - (left_moment - right_moment);
    u.values[i] = -0.5 * abs_moment;
    left_mass += m;
    left_moment += m * x;
  }
  return u;
}

FaceField drift_velocity(const Field& rho2, double chi) {
  const Grid& g = rho2.grid;
  const int n = g.size();
  const double dx = g.dx();
  Vector left(n + 1);
  Vector right(n + 1);
  left[0] = 0.0;
  for (int i = 0; i < n; ++i) left[i + 1] = left[i] + rho2.values[i] * dx;
  right[n] = 0.0;
  for (int i = n - 1; i >= 0; --i) right[i] = right[i + 1] + rho2.values[i] * dx;
  return FaceField(g, (0.5 * chi) * (right - left));
}

Vector negative_laplacian(const Field& u) {
  const int n = u.size();
  const double inv_dx2 = 1.0 / (u.grid.dx() * u.grid.dx());
  Vector out = Vector::Zero(n);
  for (int i = 1; i + 1 < n; ++i) {
    out[i] = -(u.values[i - 1] - 2.0 * u.values[i] + u.values[i + 1]) * inv_dx2;
  }
  return out;
}

}  // namespace chemolab
