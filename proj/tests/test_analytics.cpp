#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "chemolab/analytics.hpp"
#include "verify/oracles.hpp"

using namespace chemolab;

namespace {

MassSeries series(const std::vector<double>& t, double (*m2)(double)) {
  MassSeries s;
  for (double ti : t) {
    s.times.push_back(ti);
    s.mass1.push_back(1.0);
    s.mass2.push_back(m2(ti));
  }
  return s;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

}  // namespace

TEST_CASE("quarter-mass time of simple series") {
  const auto flat = quarter_mass_time(series(linspace(0, 5, 11), [](double) { return 2.0; }));
  CHECK_FALSE(flat.crossed);
  CHECK(flat.t_quarter == 5.0);
  CHECK(flat.fraction_at_end == 1.0);

  const auto ex = quarter_mass_time(series(linspace(0, 1, 10001), [](double t) { return 3.0 * std::exp(-t); }));
  CHECK(ex.crossed);
  CHECK(ex.t_quarter == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-8));

  const auto exact = quarter_mass_time(series({0.0, 1.0, 2.0}, [](double t) { return 1.0 - 0.25 * t; }));
  CHECK(exact.t_quarter == 1.0);
  CHECK(exact.fraction_at_end == 0.5);
  CHECK_THROWS_AS(quarter_mass_time(MassSeries{}), DomainError);
}

TEST_CASE("quarter-mass time commutes with time shifts and dilations") {
  auto m = [](double t) { return 1.0 / (1.0 + t * t); };
  MassSeries a, b;
  for (double t : linspace(0, 3, 301)) {
    a.times.push_back(t);
    b.times.push_back(5.0 + 2.0 * t);
    for (MassSeries* s : {&a, &b}) {
      s->mass1.push_back(1.0);
      s->mass2.push_back(7.0 * m(t));
    }
  }
  const double ta = quarter_mass_time(a).t_quarter, tb = quarter_mass_time(b).t_quarter;
  CHECK(tb == doctest::Approx(5.0 + 2.0 * ta).epsilon(1e-14));
}

TEST_CASE("duality pairing defect") {
  const Grid g(8.0, 1024);
  const Field rho0 = verify::gaussian_cell_averages(g, 0, 1, 1);
  const Field f0 = Field::sample_even(g, [](double x) { return std::exp(-x * x / 4); });
  CHECK(duality_defect(rho0, f0, WeakestAnalytic{4.0}, 0.0, 4, SchemeConfig{}) == 0.0);
  CHECK(duality_defect(rho0, f0, ZeroPotential{}, 1.0, 4, SchemeConfig{}) <= 1e-3);
  CHECK_THROWS_AS(duality_defect(rho0, Field(Grid(8.0, 512)), ZeroPotential{}, 1.0, 4, SchemeConfig{}), ConfigError);
}

TEST_CASE("pass-through integral of recorded probes") {
  const Grid g(2.0, 64);
  ObserverSpec os;
  os.probes = {1.0};
  Observer obs(os);
  Field c(g);
  c.values.setConstant(0.5);
  for (int k = 0; k <= 10; ++k) obs.record(0.1 * k, c, nullptr);
  CHECK(pass_through_integral(obs, 1.0) == doctest::Approx(2 * 0.5 * 1.0));
  CHECK(pass_through_integral(obs, 1.0, 0.5) == doctest::Approx(0.5));
  CHECK_THROWS_AS(pass_through_integral(obs, 0.5), ConfigError);

  Observer zero(os);
  for (int k = 0; k <= 10; ++k) zero.record(0.1 * k, Field(g), nullptr);
  CHECK(pass_through_integral(zero, 1.0) == 0.0);
}

TEST_CASE("decay ratio") {
  const Grid g(2.0, 64);
  Field a(g);
  a.values.setConstant(2.0);
  const auto [r, l] = decay_ratio(a, a, 0.3);
  CHECK(r == 1.0);
  CHECK(l == 1.0);
  Field half = a;
  half.values *= 0.5;
  CHECK(decay_ratio(a, half, 0.3).first == 0.5);
  CHECK_THROWS_AS(decay_ratio(Field(g), a, 0.3), DomainError);
}

TEST_CASE("first concentration time interpolates between samples") {
  const Grid g(2.0, 64);
  ObserverSpec os;
  os.radii = {0.5};
  Observer obs(os);
  for (int k = 0; k <= 4; ++k) {
    Field f(g);
    f.values.setConstant(0.25 * k);
    obs.record(k, f, nullptr);
  }
  CHECK(first_concentration_time(obs, 0.5, 0.375) == doctest::Approx(1.5));
  CHECK(first_concentration_time(obs, 0.5, 5.0) < 0.0);
  CHECK_THROWS_AS(first_concentration_time(obs, 0.7, 0.1), ConfigError);
}

TEST_CASE("power-law fits") {
  std::vector<std::pair<double, double>> lin, quad;
  for (double x : {1.0, 2.0, 4.0, 8.0}) {
    lin.emplace_back(x, 2 * x);
    quad.emplace_back(x, x * x);
  }
  const PowerLawFit a = fit_power_law(lin), b = fit_power_law(quad);
  CHECK(a.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::exp(a.intercept) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_power_law(std::vector<std::pair<double, double>>{{1, 1}, {2, 2}}), DomainError);
  CHECK_THROWS_AS(fit_power_law(std::vector<std::pair<double, double>>{{1, 1}, {2, -2}, {3, 3}}), DomainError);
}

TEST_CASE("diffusive bound diagnostics") {
  Params p;
  p.eps = 2.0;
  p.M0 = 1.0;
  p.L = std::exp(1.0);
  ReactionTimeResult r;
  r.crossed = true;
  r.t_quarter = p.L * p.L / std::log(p.M0 * p.eps * p.L);
  const DiffusiveDiagnostics d = diffusive_bound_diagnostics(r, p);
  CHECK(d.case1_ratio == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(d.case1_regime);
  CHECK(d.case1_valid);
  CHECK(d.eps_M0 == 2.0);

  p.eps = 0.25;
  const DiffusiveDiagnostics d2 = diffusive_bound_diagnostics(r, p);
  CHECK_FALSE(d2.case1_regime);
  CHECK(d2.case2_ratio == doctest::Approx(r.t_quarter / 16));
  r.crossed = false;
  CHECK_THROWS_AS(diffusive_bound_diagnostics(r, p), DomainError);
}

TEST_CASE("dual spreading constant") {
  const Grid g(4.0, 256);
  Field one(g);
  one.values.setConstant(1.0);
  CHECK(dual_spreading_constant(one, 8.0, 1.0) == doctest::Approx(1.0));
  const Field narrow = Field::sample_even(g, [](double x) { return std::abs(x) < 0.25 ? 1.0 : 0.0; });
  CHECK(dual_spreading_constant(narrow, 0.0, 0.0) > 1.0);
}
