#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gravodiff/error.hpp"
#include "gravodiff/grid.hpp"

using namespace gravodiff;

namespace {

constexpr double kPi = std::numbers::pi;

double max_phi_error(int d, int N, double n0) {
  const auto g = RadialGrid::uniform(d, 1.0, N);
  const auto s = poisson_solve(g, Field(static_cast<std::size_t>(N), n0));
  double err = 0.0;
  for (int i = 0; i < N; ++i) {
    const double r = g.centers()[static_cast<std::size_t>(i)];
    const double exact = n0 * (r * r - 1.0) / (2.0 * d);
    err = std::max(err, std::abs(s.phi[static_cast<std::size_t>(i)] - exact));
  }
  return err / (n0 / (2.0 * d));
}

} // namespace

TEST_CASE("geometry") {
  for (int d : {2, 3, 4}) {
    const auto g = RadialGrid::uniform(d, 1.7, 53);
    double total = 0.0;
    for (double v : g.cell_volume()) total += v;
    CHECK(std::abs(total / g.ball_volume() - 1.0) < 1e-12);
    CHECK(g.face_area()[0] == 0.0);
    CHECK(g.faces().back() == 1.7);
    const auto q = RadialGrid::geometric(d, 1.7, 53, 1.03);
    total = 0.0;
    for (double v : q.cell_volume()) total += v;
    CHECK(std::abs(total / q.ball_volume() - 1.0) < 1e-12);
    CHECK(q.widths()[1] / q.widths()[0] == doctest::Approx(1.03));
    CHECK(q.faces().back() == 1.7);
  }
  CHECK(RadialGrid::uniform(3, 1, 8).sigma() == doctest::Approx(4 * kPi));
  CHECK(RadialGrid::uniform(2, 1, 8).sigma() == doctest::Approx(2 * kPi));
  CHECK_THROWS_AS(RadialGrid::uniform(3, 1.0, 7), DomainError);
  CHECK_THROWS_AS(RadialGrid::uniform(5, 1.0, 10), DomainError);
}

TEST_CASE("integration and norms") {
  const auto g = RadialGrid::uniform(3, 1.0, 64);
  CHECK(integrate(g, Field(64, 3.0)) == doctest::Approx(4 * kPi).epsilon(1e-13));
  Field spike(64, 0.0);
  spike[0] = 1.0;
  CHECK(integrate(g, spike) == g.cell_volume()[0]);
  CHECK(lp_norm(g, Field(64, -2.0), 3.0) == doctest::Approx(2.0 * std::cbrt(4 * kPi / 3)));
  Field n(64);
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = 1.0 + g.centers()[i];
  CHECK(lp_norm(g, n, 1.0) == doctest::Approx(integrate(g, n)).epsilon(1e-14));
  CHECK_THROWS_AS(lp_norm(g, n, 0.5), DomainError);
  CHECK_THROWS_AS(integrate(g, Field(63, 1.0)), ShapeMismatch);
}

TEST_CASE("Poisson constant-density oracle") {
  const auto g3 = RadialGrid::uniform(3, 1.0, 200);
  const auto s3 = poisson_solve(g3, Field(200, 3.0));
  CHECK(s3.phi_face.back() == 0.0);
  CHECK(s3.phi_face.front() == doctest::Approx(-0.5).epsilon(1e-4));
  CHECK(max_phi_error(3, 200, 3.0) <= 1e-3);
  CHECK(max_phi_error(2, 200, 4.0) <= 1e-3);
  for (int d : {2, 3}) {
    const double ratio = max_phi_error(d, 100, 1.0) / max_phi_error(d, 200, 1.0);
    CAPTURE(d);
    CHECK(ratio >= 3.2);
    CHECK(ratio <= 4.8);
  }
  // grad phi = r for n = 3, d = 3
  CHECK(gradient_energy(g3, s3.dphi) == doctest::Approx(4 * kPi / 5).epsilon(1e-4));
  const auto zero = poisson_solve(g3, Field(200, 0.0));
  for (double v : zero.phi) CHECK(v == 0.0);
}

TEST_CASE("sign structure and Green identity") {
  for (int d : {2, 3, 4}) {
    const auto g = RadialGrid::uniform(d, 1.0, 200);
    Field n(200);
    for (std::size_t i = 0; i < n.size(); ++i) {
      const double r = g.centers()[i];
      n[i] = std::exp(-r * r / 0.09) + 0.2 * std::exp(-(r - 0.6) * (r - 0.6) / 0.01);
    }
    const auto s = poisson_solve(g, n);
    for (double v : s.phi) CHECK(v <= 0.0);
    for (double v : s.dphi) CHECK(v >= 0.0);
    const double pot = integrate_product(g, n, s.phi);
    const double grad = gradient_energy(g, s.dphi);
    CHECK(pot < 0.0);
    CHECK(std::abs(pot + grad) <= 1e-3 * grad);
  }
}

TEST_CASE("finite-volume Laplacian") {
  const auto g = RadialGrid::uniform(3, 1.0, 100);
  const auto L = laplacian(g);
  // away from the origin and the boundary cell, L applied to the discrete
  // Poisson solution reproduces n to second order
  Field n(100);
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = std::cos(2.0 * g.centers()[i]);
  const auto s = poisson_solve(g, n);
  const auto back = apply(L, s.phi);
  for (std::size_t i = 4; i + 1 < n.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(back[i] - n[i]) < 5e-3);
  }
  // the tridiagonal solve inverts L
  const auto x = solve_tridiagonal(L, n);
  const auto y = apply(L, x);
  for (std::size_t i = 0; i < n.size(); ++i) CHECK(std::abs(y[i] - n[i]) < 1e-9);
  // conservation: sum_i V_i (L phi)_i equals the boundary flux
  double total = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) total += g.cell_volume()[i] * back[i];
  CHECK(total == doctest::Approx(g.face_area().back() * (-s.phi.back() / g.face_spacing().back())));
  Tridiagonal singular{{0.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}};
  CHECK_THROWS_AS(solve_tridiagonal(singular, Field{1.0, 1.0}), StepFailure);
}

TEST_CASE("difference gradient") {
  const auto g = RadialGrid::uniform(2, 1.0, 50);
  Field phi(50);
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = g.centers()[i] * g.centers()[i] - 1.0;
  const auto grad = difference_gradient(g, phi);
  CHECK(grad[0] == 0.0);
  for (std::size_t i = 1; i < 50; ++i) CHECK(grad[i] == doctest::Approx(2.0 * g.faces()[i]).epsilon(1e-12));
}
