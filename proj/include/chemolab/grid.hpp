#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

#include "chemolab/errors.hpp"

namespace chemolab {

using Vector = Eigen::VectorXd;

/// Uniform cell-centered mesh on [-half_width, half_width].
///
/// The cell count is even, so x = 0 is a cell face and cell centers come in
/// mirrored pairs x_i = -x_{n-1-i}.
class Grid {
 public:
  static constexpr int kMinCells = 16;

  Grid(double half_width, int n_cells);

  /// Grid with roughly `cells_per_unit` cells per unit length, rounded up to
  /// an even count.
  static Grid with_resolution(double half_width, double cells_per_unit);

  double half_width() const { return half_width_; }
  int size() const { return n_cells_; }
  double dx() const { return dx_; }

  double center(int i) const { return -half_width_ + (i + 0.5) * dx_; }
  /// Face j sits between cells j-1 and j; faces 0 and n are the boundary.
  double face(int j) const { return -half_width_ + j * dx_; }

  Vector centers() const;
  Vector faces() const;

  /// Index of the cell containing x (clamped to the domain).
  int cell_of(double x) const;

  bool operator==(const Grid& other) const {
    return n_cells_ == other.n_cells_ && half_width_ == other.half_width_;
  }

 private:
  double half_width_;
  int n_cells_;
  double dx_;
};

/// Cell-averaged values on a grid.
struct Field {
  Grid grid;
  Vector values;

  explicit Field(const Grid& g) : grid(g), values(Vector::Zero(g.size())) {}
  Field(const Grid& g, Vector v);

  static Field sample(const Grid& g, const std::function<double(double)>& fn);
  /// Samples fn on the right half and mirrors, so the result is exactly even.
  static Field sample_even(const Grid& g, const std::function<double(double)>& fn);

  int size() const { return grid.size(); }
  double operator[](int i) const { return values[i]; }
  double& operator[](int i) { return values[i]; }

  double total_mass() const { return values.sum() * grid.dx(); }
  bool all_finite() const { return values.allFinite(); }
  bool nonnegative() const { return values.size() == 0 || values.minCoeff() >= 0.0; }
};

/// Physical parameters of the two-species system; gamma = sigma * chi.
struct Params {
  double chi = 0.0;
  double eps = 0.0;
  double sigma = 1.0;
  double M0 = 1.0;
  double L = 1.0;

  double gamma() const { return sigma * chi; }

  // Regime indicators appearing in the reaction-time scaling hypotheses.
  double reaction_to_drift() const { return M0 * eps / gamma(); }
  double mass_ratio() const { return M0 / sigma; }
  double harnack_ratio() const { return chi * chi * sigma / eps; }

  void validate() const;
};

/// Integral of the piecewise-constant reconstruction over [a, b].
double integrate(const Field& field, double a, double b);

/// Mass of the field on [-r, r].
double concentration(const Field& field, double r);

/// concentration() for many radii using a single prefix sum.
std::vector<double> concentration_profile(const Field& field, std::span<const double> radii);

/// Linear interpolation between cell centers (constant beyond the outer centers).
double value_at(const Field& field, double x);

/// Transition width of the attractant plateau: max(1/1000, 4 dx).
double eta_transition_width(const Grid& grid);
/// True when the grid cannot resolve the nominal 1/1000 shoulder.
bool eta_widened(const Grid& grid);

/// Smooth even plateau: 1 on |x| <= 1/2 - w, 0 on |x| >= 1/2, quintic
/// smoothstep in between. Sampled at cell centers.
Field build_eta(const Grid& grid);

enum class Side { Right, Symmetric };

/// Truncation half-width of the initial rho1 bump around x = L.
double rho1_truncation(double L);

/// Unit-variance Gaussian bump centered at L (or at +-L for Symmetric),
/// truncated to [L - w, L + w] with w = rho1_truncation(L) and normalized
/// so the discrete total mass equals M0. Cell values are exact cell averages.
Field build_rho1_initial(const Grid& grid, double M0, double L, Side side);

}  // namespace chemolab
