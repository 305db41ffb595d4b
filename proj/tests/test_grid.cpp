#include <doctest.h>

#include <cmath>
#include <random>

#include "chemolab/grid.hpp"
#include "verify/oracles.hpp"

using namespace chemolab;

TEST_CASE("grid geometry is symmetric with a face at the origin") {
  const Grid g(4.0, 64);
  CHECK(g.dx() == doctest::Approx(0.125));
  CHECK(g.face(32) == 0.0);
  CHECK(g.face(0) == -4.0);
  CHECK(g.face(64) == 4.0);
  for (int i = 0; i < g.size(); ++i) CHECK(g.center(i) == -g.center(g.size() - 1 - i));
  CHECK(g.cell_of(-4.0) == 0);
  CHECK(g.cell_of(4.0) == 63);
  CHECK(g.cell_of(0.01) == 32);
}

TEST_CASE("grid rejects odd, tiny or degenerate meshes") {
  CHECK_THROWS_AS(Grid(1.0, 17), ConfigError);
  CHECK_THROWS_AS(Grid(1.0, 8), ConfigError);
  CHECK_THROWS_AS(Grid(0.0, 64), ConfigError);
  CHECK_THROWS_AS(Grid(-1.0, 64), ConfigError);
  CHECK_THROWS_AS(Field(Grid(1.0, 16), Vector::Zero(15)), ConfigError);
}

TEST_CASE("with_resolution rounds up to an even count") {
  const Grid g = Grid::with_resolution(40.0, 64.0);
  CHECK(g.size() == 5120);
  CHECK(Grid::with_resolution(1.3, 10.0).size() == 26);
  CHECK(Grid::with_resolution(0.5, 1.0).size() == Grid::kMinCells);
}

TEST_CASE("params derive gamma and regime indicators") {
  Params p;
  p.chi = 32;
  p.sigma = 0.5;
  p.eps = 2;
  p.M0 = 1000;
  CHECK(p.gamma() == 16.0);
  CHECK(p.reaction_to_drift() == doctest::Approx(125.0));
  CHECK(p.mass_ratio() == doctest::Approx(2000.0));
  CHECK(p.harnack_ratio() == doctest::Approx(256.0));
  p.L = 0.5;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("integrate handles indicators, empty intervals and partial cells") {
  const Grid g(2.0, 1024);
  const Field ind = Field::sample(g, [](double x) { return std::abs(x) <= 0.5 ? 1.0 : 0.0; });
  CHECK(std::abs(integrate(ind, -0.5, 0.5) - 1.0) <= g.dx());
  CHECK(integrate(ind, 0.3, 0.3) == 0.0);
  CHECK(concentration(ind, 0.25) == doctest::Approx(0.5).epsilon(g.dx()));
  CHECK(concentration(ind, 0.0) == 0.0);

  const Field ones = Field::sample(g, [](double) { return 1.0; });
  CHECK(integrate(ones, -0.3, 0.71) == doctest::Approx(1.01).epsilon(1e-12));
}

TEST_CASE("integrate of a unit Gaussian over [-1, 1] matches the erf oracle") {
  const Grid g(8.0, 1024);
  const Field f = verify::gaussian_cell_averages(g, 0.0, 1.0, 1.0);
  const double exact = verify::quadrature([](double x) { return verify::normal_pdf(x, 0.0, 1.0); }, -1.0, 1.0, 64);
  CHECK(exact == doctest::Approx(std::erf(1.0 / std::sqrt(2.0))).epsilon(1e-14));
  CHECK(std::abs(integrate(f, -1.0, 1.0) - 0.6827) <= 1e-3);
  CHECK(std::abs(integrate(f, -1.0, 1.0) - exact) <= 1e-12);
}

TEST_CASE("integrate rejects intervals outside the domain") {
  const Field f(Grid(1.0, 16));
  CHECK_THROWS_AS(integrate(f, -1.5, 0.0), DomainError);
  CHECK_THROWS_AS(integrate(f, 0.5, 0.2), DomainError);
  CHECK_THROWS_AS(concentration(f, -0.1), DomainError);
  CHECK_NOTHROW(integrate(f, -1.0, 1.0));
}

TEST_CASE("concentration at half width is the total mass") {
  const Grid g(3.0, 96);
  const Field f = verify::gaussian_cell_averages(g, 0.4, 0.7, 2.0);
  CHECK(concentration(f, 3.0) == doctest::Approx(integrate(f, -3.0, 3.0)).epsilon(1e-14));
  CHECK(concentration(f, 3.0) == doctest::Approx(f.total_mass()).epsilon(1e-14));
}

TEST_CASE("concentration is nondecreasing in r for random nonnegative fields") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Grid g(2.0, 128);
  std::vector<double> radii;
  for (int k = 0; k <= 200; ++k) radii.push_back(2.0 * k / 200.0);
  for (int trial = 0; trial < 20; ++trial) {
    Field f(g);
    for (int i = 0; i < g.size(); ++i) f[i] = u(rng);
    const auto c = concentration_profile(f, radii);
    for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k] >= c[k - 1] - 1e-15);
    for (std::size_t k = 0; k < c.size(); k += 37) CHECK(c[k] == doctest::Approx(concentration(f, radii[k])));
  }
}

TEST_CASE("integrate is linear in the field") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Grid g(1.0, 64);
  Field f(g), h(g);
  for (int i = 0; i < g.size(); ++i) {
    f[i] = u(rng);
    h[i] = u(rng);
  }
  const double alpha = 0.7, beta = -2.3;
  const Field combo(g, alpha * f.values + beta * h.values);
  const double lhs = integrate(combo, -0.41, 0.77);
  const double rhs = alpha * integrate(f, -0.41, 0.77) + beta * integrate(h, -0.41, 0.77);
  CHECK(std::abs(lhs - rhs) <= 1e-14);
}

TEST_CASE("value_at interpolates between centers") {
  const Grid g(1.0, 16);
  const Field f = Field::sample(g, [](double x) { return 3.0 * x + 1.0; });
  CHECK(value_at(f, 0.0) == doctest::Approx(1.0));
  CHECK(value_at(f, 0.3) == doctest::Approx(1.9));
  CHECK(value_at(f, 1.0) == doctest::Approx(f[15]));
}

TEST_CASE("eta is an even plateau trapped between the two indicators") {
  const Grid g(2.0, 256);
  const Field eta = build_eta(g);
  const double w = eta_transition_width(g);
  CHECK(w == doctest::Approx(4.0 * g.dx()));
  CHECK(eta_widened(g));
  CHECK(value_at(eta, 0.0) == 1.0);
  CHECK(value_at(eta, 0.6) == 0.0);
  for (int i = 0; i < g.size(); ++i) {
    const double r = std::abs(g.center(i));
    CHECK(eta[i] == eta[g.size() - 1 - i]);
    CHECK(eta[i] >= (r <= 0.5 - w ? 1.0 : 0.0));
    CHECK(eta[i] <= (r <= 0.5 ? 1.0 : 0.0));
  }
  for (int i = g.size() / 2 + 1; i < g.size(); ++i) CHECK(eta[i] <= eta[i - 1]);
  CHECK_FALSE(eta_widened(Grid(1.0, 8192)));
}

TEST_CASE("initial rho1 has the requested mass and stays away from the plateau") {
  for (double L : {1.0, 4.0, 16.0}) {
    const Grid g = Grid::with_resolution(2 * L + 8, 64);
    const Field f = build_rho1_initial(g, 1000.0, L, Side::Right);
    CHECK(f.nonnegative());
    CHECK(std::abs(f.total_mass() - 1000.0) <= 1e-10 * 1000.0);
    CHECK(integrate(f, -L / 2, L / 2) <= 1.0);
    CHECK(integrate(f, L - 1.0, L + 1.0) > 0.6 * 1000.0);
  }
}

TEST_CASE("symmetric initial rho1 is exactly even with half the mass per bump") {
  const Grid g = Grid::with_resolution(16, 64);
  const Field f = build_rho1_initial(g, 2.0, 4.0, Side::Symmetric);
  CHECK((f.values - f.values.reverse()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(integrate(f, 0.0, 16.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(f.total_mass() - 2.0) <= 1e-10 * 2.0);
}

TEST_CASE("initial rho1 needs room for the bump") {
  CHECK_THROWS_AS(build_rho1_initial(Grid(9.0, 64), 1.0, 4.0, Side::Right), ConfigError);
  CHECK_THROWS_AS(build_rho1_initial(Grid(20.0, 64), -1.0, 4.0, Side::Right), ConfigError);
}
