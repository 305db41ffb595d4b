#include "chemolab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace chemolab {

Grid::Grid(double half_width, int n_cells) : half_width_(half_width), n_cells_(n_cells) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ConfigError("grid half_width must be positive and finite");
  }
  if (n_cells < kMinCells || n_cells % 2 != 0) {
    throw ConfigError("grid n_cells must be even and >= 16 (got " + std::to_string(n_cells) + ")");
  }
  dx_ = 2.0 * half_width / n_cells;
}

Grid Grid::with_resolution(double half_width, double cells_per_unit) {
  if (!(cells_per_unit > 0.0)) throw ConfigError("cells_per_unit must be positive");
  int n = static_cast<int>(std::ceil(2.0 * half_width * cells_per_unit - 1e-9));
  if (n % 2 != 0) ++n;
  return Grid(half_width, std::max(n, kMinCells));
}

Vector Grid::centers() const {
  Vector x(n_cells_);
  for (int i = 0; i < n_cells_; ++i) x[i] = center(i);
  return x;
}

Vector Grid::faces() const {
  Vector x(n_cells_ + 1);
  for (int j = 0; j <= n_cells_; ++j) x[j] = face(j);
  return x;
}

int Grid::cell_of(double x) const {
  const int i = static_cast<int>(std::floor((x + half_width_) / dx_));
  return std::clamp(i, 0, n_cells_ - 1);
}

Field::Field(const Grid& g, Vector v) : grid(g), values(std::move(v)) {
  if (values.size() != g.size()) {
    throw ConfigError("field size " + std::to_string(values.size()) + " does not match grid size " +
                      std::to_string(g.size()));
  }
}

Field Field::sample(const Grid& g, const std::function<double(double)>& fn) {
  Field f(g);
  for (int i = 0; i < g.size(); ++i) f.values[i] = fn(g.center(i));
  return f;
}

Field Field::sample_even(const Grid& g, const std::function<double(double)>& fn) {
  Field f(g);
  const int n = g.size();
  for (int i = n / 2; i < n; ++i) {
    f.values[i] = fn(g.center(i));
    f.values[n - 1 - i] = f.values[i];
  }
  return f;
}

void Params::validate() const {
  if (!(chi >= 0.0)) throw ConfigError("params.chi must be >= 0");
  if (!(eps >= 0.0)) throw ConfigError("params.eps must be >= 0");
  if (!(sigma > 0.0)) throw ConfigError("params.sigma must be > 0");
  if (!(M0 > 0.0)) throw ConfigError("params.M0 must be > 0");
  if (!(L >= 1.0)) throw ConfigError("params.L must be >= 1");
}

namespace {

void check_interval(const Grid& grid, double a, double b) {
  const double hw = grid.half_width();
  const double slack = 1e-12 * hw;
  if (!(a <= b)) throw DomainError("integration interval must satisfy a <= b");
  if (a < -hw - slack || b > hw + slack) throw DomainError("integration interval outside the domain");
}

}  // namespace

double integrate(const Field& field, double a, double b) {
  const Grid& g = field.grid;
  check_interval(g, a, b);
  if (a == b) return 0.0;
  const double hw = g.half_width();
  const double dx = g.dx();
  a = std::max(a, -hw);
  b = std::min(b, hw);
  const int first = g.cell_of(a);
  const int last = g.cell_of(b);
  double sum = 0.0;
  for (int i = first; i <= last; ++i) {
    const double lo = std::max(a, g.face(i));
    const double hi = std::min(b, g.face(i) + dx);
    if (hi > lo) sum += field.values[i] * (hi - lo);
  }
  return sum;
}

double concentration(const Field& field, double r) {
  if (r < 0.0) throw DomainError("concentration radius must be nonnegative");
  return integrate(field, -r, r);
}

std::vector<double> concentration_profile(const Field& field, std::span<const double> radii) {
  const Grid& g = field.grid;
  const int n = g.size();
  const double dx = g.dx();
  // cumulative[j] = mass left of face j
  std::vector<double> cumulative(n + 1, 0.0);
  for (int i = 0; i < n; ++i) cumulative[i + 1] = cumulative[i] + field.values[i] * dx;

  auto mass_left_of = [&](double x) {
    const double s = (x + g.half_width()) / dx;
    if (s <= 0.0) return 0.0;
    if (s >= n) return cumulative[n];
    const int i = static_cast<int>(s);
    return cumulative[i] + field.values[i] * (s - i) * dx;
  };

  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (r < 0.0) throw DomainError("concentration radius must be nonnegative");
    if (r > g.half_width() * (1.0 + 1e-12)) throw DomainError("concentration radius outside the domain");
    out.push_back(mass_left_of(r) - mass_left_of(-r));
  }
  return out;
}

double value_at(const Field& field, double x) {
  const Grid& g = field.grid;
  const double s = (x + g.half_width()) / g.dx() - 0.5;
  if (s <= 0.0) return field.values[0];
  if (s >= g.size() - 1) return field.values[g.size() - 1];
  const int i = static_cast<int>(s);
  const double t = s - i;
  return (1.0 - t) * field.values[i] + t * field.values[i + 1];
}

double eta_transition_width(const Grid& grid) { return std::max(1.0 / 1000.0, 4.0 * grid.dx()); }

bool eta_widened(const Grid& grid) { return 4.0 * grid.dx() > 1.0 / 1000.0; }

Field build_eta(const Grid& grid) {
  const double w = eta_transition_width(grid);
  return Field::sample_even(grid, [w](double x) {
    const double r = std::abs(x);
    if (r >= 0.5) return 0.0;
    if (r <= 0.5 - w) return 1.0;
    const double u = (0.5 - r) / w;
    return u * u * u * (10.0 - 15.0 * u + 6.0 * u * u);
  });
}

double rho1_truncation(double L) { return std::min(3.0, 0.5 * L); }

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Adds M * (cell average of the truncated unit Gaussian at `center`).
void add_truncated_gaussian(Field& f, double center, double w, double mass) {
  const Grid& g = f.grid;
  const double norm = normal_cdf(w) - normal_cdf(-w);
  const double lo = center - w;
  const double hi = center + w;
  const int first = g.cell_of(lo);
  const int last = g.cell_of(hi);
  for (int i = first; i <= last; ++i) {
    const double a = std::max(lo, g.face(i));
    const double b = std::min(hi, g.face(i + 1));
    if (b <= a) continue;
    const double cell_mass = mass * (normal_cdf(b - center) - normal_cdf(a - center)) / norm;
    f.values[i] += cell_mass / g.dx();
  }
}

}  // namespace

Field build_rho1_initial(const Grid& grid, double M0, double L, Side side) {
  if (!(M0 > 0.0)) throw ConfigError("M0 must be positive");
  if (!(L >= 1.0)) throw ConfigError("L must be >= 1");
  if (grid.half_width() < L + 6.0) {
    throw ConfigError("domain half_width must be at least L + 6 for the initial rho1 bump");
  }
  const double w = rho1_truncation(L);
  Field f(grid);
  if (side == Side::Right) {
    add_truncated_gaussian(f, L, w, M0);
  } else {
    // Mirror explicitly so the data is even bit for bit.
    add_truncated_gaussian(f, L, w, 0.5 * M0);
    f.values += f.values.reverse().eval();
  }
  // Remove the residual rounding of the cdf differences.
  f.values *= M0 / f.total_mass();
  return f;
}

}  // namespace chemolab
