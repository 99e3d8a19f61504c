#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "fermi_reference.hpp"
#include "gravodiff/error.hpp"
#include "gravodiff/fermi.hpp"
#include "gravodiff/quadrature.hpp"

using namespace gravodiff;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Independent oracle: Boost double-exponential quadrature split at max(z, 0).
double boost_fermi(double alpha, double z) {
  auto g = [&](double x) {
    if (x <= z) return std::pow(x, alpha) / (1.0 + std::exp(x - z));
    const double e = std::exp(z - x);
    return e == 0.0 ? 0.0 : std::pow(x, alpha) * e / (1.0 + e);
  };
  const double split = std::max(z, 0.0);
  double total = 0.0;
  if (split > 0.0) {
    boost::math::quadrature::tanh_sinh<double> ts;
    total += ts.integrate(g, 0.0, split, 1e-15);
  }
  boost::math::quadrature::exp_sinh<double> es;
  total += es.integrate(g, split, std::numeric_limits<double>::infinity(), 1e-15);
  return total;
}

} // namespace

TEST_CASE("Gauss-Kronrod pair integrates polynomials exactly") {
  for (int degree = 0; degree <= 22; ++degree) {
    auto f = [&](double x) { return std::pow(x, degree); };
    const auto r = quad::kronrod15(f, -0.5, 1.5);
    const double exact = (std::pow(1.5, degree + 1) - std::pow(-0.5, degree + 1)) / (degree + 1);
    CHECK(r.value == doctest::Approx(exact).epsilon(1e-14));
  }
  // error estimate vanishes when the embedded Gauss rule is also exact
  auto cubic = [](double x) { return x * x * x - x; };
  CHECK(quad::kronrod15(cubic, 0.0, 2.0).error < 1e-13);
}

TEST_CASE("adaptive integration reaches tolerance on a peaked integrand") {
  auto f = [](double x) { return 1.0 / (1e-4 + x * x); };
  const auto r = quad::integrate(f, -1.0, 1.0, 1e-12, 0.0, 400);
  CHECK(r.converged);
  CHECK(rel(r.value, 2.0 * std::atan(1.0 / 1e-2) / 1e-2) < 1e-12);
}

TEST_CASE("order and config validation") {
  CHECK_THROWS_AS(FermiOrder(-1.0), DomainError);
  CHECK_THROWS_AS(FermiOrder(std::nan("")), DomainError);
  CHECK_NOTHROW(FermiOrder(-0.99));
  FermiEvalConfig cfg;
  cfg.rel_tol = 1e-5;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.rel_tol = 1e-10;
  cfg.switch_z = 10;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  CHECK_THROWS_AS(fermi_integral(FermiOrder(0.5), INFINITY), DomainError);
}

TEST_CASE("fermi_integral matches the mpmath table") {
  for (const auto& ref : oracle::kFermiValues) {
    CAPTURE(ref.alpha);
    CAPTURE(ref.z);
    CHECK(rel(fermi_integral(FermiOrder(ref.alpha), ref.z), ref.value) < 5e-13);
  }
}

TEST_CASE("both branches agree with the mpmath table wherever they apply") {
  FermiEvalConfig cfg;
  for (const auto& ref : oracle::kFermiValues) {
    CAPTURE(ref.alpha);
    CAPTURE(ref.z);
    if (ref.z <= 200.0) CHECK(rel(fermi_detail::quadrature(ref.alpha, ref.z, 0, cfg), ref.value) < 5e-13);
    // the divergent series leaves an O(e^{-z}) remainder
    if (ref.z >= 35.0) CHECK(rel(fermi_detail::asymptotic(ref.alpha, ref.z, 0), ref.value) < 1e-14);
  }
}

TEST_CASE("fermi_integral agrees with Boost double-exponential quadrature") {
  for (double alpha : {-0.7, -0.25, 0.3, 0.5, 1.0, 1.7, 3.0}) {
    for (double z = -15.0; z <= 60.0; z += 3.7) {
      CAPTURE(alpha);
      CAPTURE(z);
      CHECK(rel(fermi_integral(FermiOrder(alpha), z), boost_fermi(alpha, z)) < 1e-11);
    }
  }
}

TEST_CASE("reference values") {
  CHECK(rel(fermi_integral(FermiOrder(0.0), 0.0), std::numbers::ln2) < 1e-14);
  CHECK(rel(fermi_integral(FermiOrder(1.0), 0.0), std::numbers::pi * std::numbers::pi / 12) < 1e-14);
  const double big = fermi_integral(FermiOrder(2.0), 100.0);
  CHECK(rel(big, 1e6 / 3 + 200 * std::numbers::pi * std::numbers::pi / 6) < 1e-14);
  CHECK(std::abs(big - 1e6 / 3) < 10.0 * 100.0);
}

TEST_CASE("closed form for alpha = 0") {
  for (int i = 0; i < 200; ++i) {
    const double z = -10.0 + 40.0 * i / 199.0;
    const double f0 = fermi_integral(FermiOrder(0.0), z);
    CHECK(std::abs(f0 - std::log1p(std::exp(z))) <= 1e-10 * std::max(1.0, f0));
  }
}

TEST_CASE("strict monotonicity in z") {
  for (double alpha : {-0.9, -0.5, 0.0, 0.5, 1.5, 4.0}) {
    double prev = 0.0;
    for (double z = -30.0; z <= 300.0; z += 0.73) {
      const double f = fermi_integral(FermiOrder(alpha), z);
      CHECK(f > prev);
      prev = f;
    }
  }
}

TEST_CASE("kernel derivatives match the mpmath table") {
  for (const auto& ref : oracle::kFermiSlopes) {
    CAPTURE(ref.alpha);
    CAPTURE(ref.z);
    const FermiOrder order(ref.alpha);
    CHECK(rel(fermi_kernel_derivative(order, ref.z, 1), ref.first) < 1e-12);
    CHECK(rel(fermi_kernel_derivative(order, ref.z, 2), ref.second) < 1e-11);
    if (ref.alpha > 0) CHECK(rel(fermi_derivative(order, ref.z), ref.first) < 1e-12);
    // asymptotic branch of the derivatives
    if (ref.z >= 30.0) {
      CHECK(std::abs(fermi_detail::asymptotic(ref.alpha, ref.z, 1) - ref.first) < 1e-12);
      CHECK(std::abs(fermi_detail::asymptotic(ref.alpha, ref.z, 2) - ref.second) < 1e-12);
    }
  }
  CHECK_THROWS_AS(fermi_kernel_derivative(FermiOrder(1.0), 0.0, 3), UnsupportedOrder);
}

TEST_CASE("derivative recursion against centered differences") {
  const double h = 1e-4;
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    const FermiOrder order(alpha);
    for (int i = 0; i < 50; ++i) {
      const double z = -5.0 + 25.0 * i / 49.0;
      const double fd = (fermi_integral(order, z + h) - fermi_integral(order, z - h)) / (2 * h);
      CHECK(rel(fermi_derivative(order, z), fd) < 1e-6);
    }
  }
  CHECK(rel(fermi_derivative(FermiOrder(1.0), 0.0), std::numbers::ln2) < 1e-14);
  CHECK(rel(fermi_derivative(FermiOrder(0.0), 0.7), 1.0 / (1.0 + std::exp(-0.7))) < 1e-15);
  CHECK_THROWS_AS(fermi_derivative(FermiOrder(-0.5), 0.0), UnsupportedOrder);
}

TEST_CASE("inverse round trips") {
  CHECK(std::abs(fermi_inverse(FermiOrder(0.0), std::numbers::ln2)) < 1e-12);
  CHECK(std::abs(fermi_inverse(FermiOrder(1.0), std::numbers::pi * std::numbers::pi / 12)) < 1e-8);
  CHECK(std::abs(fermi_inverse(FermiOrder(2.0), fermi_integral(FermiOrder(2.0), 5.0)) - 5.0) < 1e-8);
  for (double alpha : {-0.5, 0.0, 0.5, 1.0}) {
    const FermiOrder order(alpha);
    for (double y : {1e-12, 1e-6, 0.3, 1.0, 7.0, 1e3, 1e8}) {
      const double z = fermi_inverse(order, y);
      CHECK(std::abs(fermi_integral(order, z) - y) <= 1e-13 * y);
    }
  }
  for (double y : {1e-30, 1e-200, 1e-310}) {
    const double z = fermi_inverse(FermiOrder(0.5), y);
    CHECK(z == doctest::Approx(std::log(y / std::tgamma(1.5))).epsilon(1e-14));
  }
  CHECK_THROWS_AS(fermi_inverse(FermiOrder(0.5), 0.0), DomainError);
  CHECK_THROWS_AS(fermi_inverse(FermiOrder(0.5), std::nan("")), DomainError);
}

TEST_CASE("Sommerfeld limit residual") {
  const double limit = -std::numbers::pi * std::numbers::pi / 3;
  for (double alpha : {0.5, 1.0, 2.0})
    CHECK(std::abs(sommerfeld_limit_residual(FermiOrder(alpha), 200.0) / limit - 1.0) < 0.02);
  const FermiOrder two(2.0);
  CHECK(std::abs(sommerfeld_limit_residual(two, 10.0) - limit) <
        std::abs(sommerfeld_limit_residual(two, 5.0) - limit));
  CHECK_THROWS_AS(sommerfeld_limit_residual(two, 0.0), DomainError);
}

TEST_CASE("leading asymptotics with a stable constant") {
  for (double alpha : {0.5, 1.5, 2.5}) {
    const FermiOrder order(alpha);
    auto k_of = [&](double z) {
      return std::abs(fermi_integral(order, z) - std::pow(z, alpha + 1) / (alpha + 1)) / std::pow(z, alpha - 1);
    };
    const double k = k_of(50.0);
    for (double z = 50.0; z <= 500.0; z *= 2.0) {
      CHECK(k_of(z) <= 1.01 * k);
      CHECK(std::abs(k_of(2 * z) / k_of(z) - 1.0) < 0.01);
    }
  }
}

TEST_CASE("composition convexity") {
  const std::vector<std::pair<double, double>> pairs = {{0.5, -0.5}, {1.5, 0.5}, {2.0, 0.0}, {1.0, 0.5}};
  for (auto [a, b] : pairs) {
    const FermiOrder fa(a), fb(b);
    std::vector<double> y, g;
    for (int i = 0; i <= 40; ++i) {
      y.push_back(std::pow(10.0, -4.0 + 8.0 * i / 40.0));
      g.push_back(fermi_integral(fa, fermi_inverse(fb, y.back())));
    }
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
      // divided second difference on the nonuniform sample
      const double s1 = (g[i] - g[i - 1]) / (y[i] - y[i - 1]);
      const double s2 = (g[i + 1] - g[i]) / (y[i + 1] - y[i]);
      CHECK(s2 - s1 >= -1e-9 * std::abs(s1));
      CHECK(s1 > 0.0);
    }
  }
}

TEST_CASE("product inequality of derivatives") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double beta : {0.25, 0.5, 1.0}) {
      if (!(beta < alpha + 1.0) || alpha - beta <= 0.0) continue;
      for (double z : {-4.0, -1.0, 0.0, 2.0, 8.0, 25.0}) {
        const double lhs = fermi_derivative(FermiOrder(alpha + beta), z) *
                           fermi_derivative(FermiOrder(alpha - beta), z);
        const double sq = std::pow(fermi_derivative(FermiOrder(alpha), z), 2);
        CHECK(lhs - sq > 0.0);
      }
    }
  }
}
