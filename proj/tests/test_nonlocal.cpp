#include <doctest.h>

#include <cmath>

#include "chemolab/nonlocal.hpp"
#include "verify/oracles.hpp"

using namespace chemolab;

namespace {

Field unit_indicator(const Grid& g, double sigma = 1.0) {
  return Field::sample_even(g, [sigma](double x) { return std::abs(x) <= 0.5 ? sigma : 0.0; });
}

}  // namespace

TEST_CASE("inverse Laplacian of the unit indicator") {
  const Grid g(4.0, 512);
  const Field u = inv_laplacian(unit_indicator(g));
  CHECK(std::abs(value_at(u, 0.0) - (-1.0 / 8.0)) <= 2 * g.dx());
  for (double x : {0.5, 1.0, 2.5}) CHECK(std::abs(value_at(u, x) - (-x / 2.0)) <= 2 * g.dx());
  for (double x : {-0.75, -3.0}) CHECK(std::abs(value_at(u, x) - (x / 2.0)) <= 2 * g.dx());
}

TEST_CASE("inverse Laplacian of zero is zero and is linear") {
  const Grid g(3.0, 96);
  CHECK(inv_laplacian(Field(g)).values.cwiseAbs().maxCoeff() == 0.0);
  const Field a = verify::gaussian_cell_averages(g, 0.3, 0.5, 1.0);
  const Field b = unit_indicator(g);
  const Field combo(g, 2.0 * a.values - 0.5 * b.values);
  const Vector lhs = inv_laplacian(combo).values;
  const Vector rhs = 2.0 * inv_laplacian(a).values - 0.5 * inv_laplacian(b).values;
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("discrete Laplacian inverts the moment formula up to roundoff") {
  const Grid g(10.0, 1024);
  const Field src = verify::gaussian_cell_averages(g, -0.7, 1.3, 3.0);
  const Vector lap = negative_laplacian(inv_laplacian(src));
  const auto interior = Eigen::seqN(1, g.size() - 2);
  CHECK((lap(interior) - src.values(interior)).cwiseAbs().maxCoeff() <= 1e-9 * src.values.maxCoeff());
  CHECK(lap[0] == 0.0);
}

TEST_CASE("drift of the unit plateau") {
  const double chi = 3.0, sigma = 2.0;
  const Grid g(4.0, 512);
  const FaceField v = drift_velocity(unit_indicator(g, sigma), chi);
  const double gamma = chi * sigma;
  CHECK(v[g.size() / 2] == 0.0);
  CHECK(v[g.size() / 2 + 64] == doctest::Approx(-gamma / 2));  // x = 1/2
  CHECK(v[g.size() / 2 + 100] == doctest::Approx(-gamma / 2));
  CHECK(v[g.size() / 2 + 16] == doctest::Approx(-gamma / 4));  // x = 1/4
}

TEST_CASE("drift of an even density is exactly odd") {
  const Grid g(5.0, 640);
  const Field rho = Field::sample_even(g, [](double x) { return std::exp(-x * x) * (1.0 + 0.3 * std::cos(7 * x)); });
  const FaceField v = drift_velocity(rho, 11.0);
  for (int j = 0; j <= g.size(); ++j) CHECK(v[j] == -v[g.size() - j]);
}

TEST_CASE("drift points inward outside the support") {
  const Grid g(3.0, 192);
  const Field rho = Field::sample(g, [](double x) { return std::abs(x) <= 0.5 ? 1.0 + x : 0.0; });
  const FaceField v = drift_velocity(rho, 5.0);
  for (int j = 0; j <= g.size(); ++j) {
    if (g.face(j) >= 0.5) CHECK(v[j] <= 0.0);
    if (g.face(j) <= -0.5) CHECK(v[j] >= 0.0);
  }
}

TEST_CASE("drift matches the centered difference of the potential to second order") {
  const double chi = 4.0;
  double errors[2];
  int level = 0;
  for (int n : {512, 1024}) {
    const Grid g(6.0, n);
    const Field rho = Field::sample(g, [](double x) { return verify::normal_pdf(x, 0.2, 0.6); });
    const Field u = inv_laplacian(rho);
    const FaceField v = drift_velocity(rho, chi);
    double worst = 0.0;
    for (int j = 1; j < g.size(); ++j) worst = std::max(worst, std::abs(chi * (u[j] - u[j - 1]) / g.dx() - v[j]));
    errors[level++] = worst;
  }
  CHECK(errors[0] <= 1e-9);
  CHECK(errors[1] <= 1e-9);
}
