#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gravodiff/error.hpp"
#include "gravodiff/microcanonical.hpp"

using namespace gravodiff;

namespace {

constexpr double kPi = std::numbers::pi;

Field gaussian(const RadialGrid& g, double width) {
  Field n(static_cast<std::size_t>(g.cells()));
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = std::exp(-std::pow(g.centers()[i] / width, 2));
  return n;
}

} // namespace

TEST_CASE("thermal energy") {
  const auto g = RadialGrid::uniform(3, 1.0, 100);
  const Field n = gaussian(g, 0.3);
  const double M = integrate(g, n);
  const auto mb = EosModel::maxwell_boltzmann(3);
  for (double theta : {0.1, 1.0, 7.5})
    CHECK(thermal_energy(g, mb, n, theta) == doctest::Approx(1.5 * theta * M).epsilon(1e-13));
  CHECK(thermal_energy_slope(g, mb, n, 2.0) == doctest::Approx(1.5 * M).epsilon(1e-13));

  const auto poly = EosModel::polytropic(3, 0.7);
  CHECK(thermal_energy(g, poly, n, 0.2) == doctest::Approx(thermal_energy(g, poly, n, 5.0)).epsilon(1e-13));
}

TEST_CASE("potential energy of a uniform ball") {
  const auto g = RadialGrid::uniform(3, 1.0, 200);
  const Field n(200, 3.0);
  const auto s = poisson_solve(g, n);
  CHECK(potential_energy(g, n, s.phi) == doctest::Approx(-2.0 * kPi / 5.0).epsilon(1e-4));
}

TEST_CASE("closed-form temperature") {
  const auto g = RadialGrid::uniform(3, 1.0, 50);
  const Field n(50, 1.0 / g.ball_volume());
  const Field phi(50, -0.2);
  const auto mb = EosModel::maxwell_boltzmann(3);
  CHECK(potential_energy(g, n, phi) == doctest::Approx(-0.1).epsilon(1e-13));
  const double theta = solve_temperature(g, mb, n, phi, 1.4, {}, 1e-14);
  CHECK(std::abs(theta - 1.0) < 1e-12);
}

TEST_CASE("Fermi-Dirac round trip") {
  const auto g = RadialGrid::uniform(3, 1.0, 80);
  const Field n = gaussian(g, 0.25);
  const auto s = poisson_solve(g, n);
  const auto fd = EosModel::fermi_dirac(3);
  for (double theta : {0.05, 1.3, 40.0}) {
    const double E = thermal_energy(g, fd, n, theta) + potential_energy(g, n, s.phi);
    const double back = solve_temperature(g, fd, n, s.phi, E, {}, 1e-12);
    CHECK(back == doctest::Approx(theta).epsilon(1e-9));
    const double seeded = solve_temperature(g, fd, n, s.phi, E, {}, 1e-12, theta * 1.1);
    CHECK(seeded == doctest::Approx(theta).epsilon(1e-9));
  }
}

TEST_CASE("unattainable energy and degenerate EOS") {
  const auto g = RadialGrid::uniform(3, 1.0, 40);
  const Field n = gaussian(g, 0.3);
  const auto s = poisson_solve(g, n);
  const auto mb = EosModel::maxwell_boltzmann(3);
  const TemperatureBracket bracket{0.5, 2.0};
  const double e_hi = thermal_energy(g, mb, n, 2.0) + potential_energy(g, n, s.phi);
  try {
    solve_temperature(g, mb, n, s.phi, 2.0 * e_hi + 1.0, bracket, 1e-10);
    FAIL("expected BracketExit");
  } catch (const BracketExit& e) {
    CHECK(e.attainable_max() == doctest::Approx(e_hi));
    CHECK(e.attainable_min() < e.attainable_max());
  }
  CHECK_THROWS_AS(solve_temperature(g, EosModel::polytropic(3, 1.0), n, s.phi, 1.0, {}, 1e-10), DegenerateEos);
  CHECK_THROWS_AS((TemperatureBracket{2.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((TemperatureBracket{0.0, 1.0}.validate()), DomainError);
}

TEST_CASE("admissibility report") {
  const auto g = RadialGrid::uniform(3, 1.0, 60);
  const auto fd = EosModel::fermi_dirac(3);
  const Field zero(60, 0.0);
  const auto empty = admissibility_report(g, fd, zero, zero, 1.0, 0.0, 0.0);
  CHECK(empty.nu == doctest::Approx(4.0 / 3.0));
  CHECK(empty.all_pass());
  CHECK(empty.checks.size() == 4);

  const Field n = gaussian(g, 0.3);
  const auto s = poisson_solve(g, n);
  const double M = integrate(g, n);
  const double E = thermal_energy(g, fd, n, 1.0) + potential_energy(g, n, s.phi);
  const auto r = admissibility_report(g, fd, n, s.phi, 1.0, E, M);
  for (const auto& c : r.checks) {
    CHECK(std::isfinite(c.lhs));
    if (c.applicable && c.name != "admissible_window") CHECK(c.pass);
  }

  const auto g4 = RadialGrid::uniform(4, 1.0, 40);
  const Field n4(40, 1.0);
  const auto s4 = poisson_solve(g4, n4);
  const auto r4 = admissibility_report(g4, EosModel::fermi_dirac(4), n4, s4.phi, 1.0, 1.0, integrate(g4, n4));
  CHECK(std::isnan(r4.nu));
  for (const auto& c : r4.checks) CHECK_FALSE(c.applicable);
  CHECK(r4.all_pass());
}
