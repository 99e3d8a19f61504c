#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "gravodiff/error.hpp"
#include "gravodiff/evolve.hpp"
#include "gravodiff/run.hpp"

using namespace gravodiff;

namespace {

Field gaussian(const RadialGrid& g, double width, double mass) {
  Field n(static_cast<std::size_t>(g.cells()));
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = std::exp(-std::pow(g.centers()[i] / width, 2));
  const double m = integrate(g, n);
  for (auto& x : n) x *= mass / m;
  return n;
}

double max_of(const Field& f) { return *std::max_element(f.begin(), f.end()); }

double second_moment(const RadialGrid& g, const Field& n) {
  Field q(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) q[i] = n[i] * g.centers()[i] * g.centers()[i];
  return integrate(g, q);
}

State advance(const RadialGrid& g, State s, const EosModel& model, const TimeControl& tc, const StepOptions& opts) {
  double dt = 0.0;
  while (s.t < tc.t_end) s = step_elliptic(g, s, model, s.theta, tc, dt, opts);
  return s;
}

std::string document(const std::string& eos, const std::string& mode, const std::string& extra_time = "") {
  return R"({"grid":{"d":3,"R":1,"N":50},"eos":{"kind":")" + eos + R"("},"mode":{"kind":")" + mode +
         R"("},"initial":{"profile":"gaussian","width":0.2,"mass":0.5},"time":{"t_end":0.05)" + extra_time + "}}";
}

} // namespace

TEST_CASE("zero density is a fixed point") {
  const auto g = RadialGrid::uniform(3, 1.0, 40);
  const auto fd = EosModel::fermi_dirac(3);
  TimeControl tc;
  double dt = 0.0;
  const auto s = step_elliptic(g, elliptic_state(g, Field(40, 0.0), 0.0, 1.0), fd, 1.0, tc, dt);
  CHECK(max_of(s.n) == 0.0);
  CHECK(dt > 0.0);
  const auto r = step_relaxed(g, relaxed_state(g, Field(40, 0.0), 0.0, 1.0), fd, 1.0, {}, tc, dt);
  CHECK(max_of(r.n) == 0.0);
  CHECK(max_of(r.phi) == 0.0);
}

TEST_CASE("one step conserves mass") {
  const auto g = RadialGrid::geometric(3, 1.0, 60, 1.02);
  const Field n0 = gaussian(g, 0.2, 1.0);
  TimeControl tc;
  for (const auto& model : {EosModel::maxwell_boltzmann(3), EosModel::fermi_dirac(3), EosModel::polytropic(3, 1.0)}) {
    double dt = 0.0;
    const auto s = step_elliptic(g, elliptic_state(g, n0, 0.0, 1.0), model, 1.0, tc, dt);
    CHECK(integrate(g, s.n) == doctest::Approx(1.0).epsilon(1e-14));
    const auto r = step_relaxed(g, relaxed_state(g, n0, 0.0, 1.0), model, 1.0, {}, tc, dt);
    CHECK(integrate(g, r.n) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("pure diffusion of a spike") {
  const auto fd = EosModel::fermi_dirac(3).tabulated();
  TimeControl tc;
  tc.t_end = 0.01;
  StepOptions opts;
  opts.zero_drift = true;
  auto run_grid = [&](int N, double dt_max) {
    const auto g = RadialGrid::uniform(3, 1.0, N);
    Field n(static_cast<std::size_t>(N), 0.0);
    for (int i = 0; i < N / 10; ++i) n[static_cast<std::size_t>(i)] = 1.0;
    TimeControl t = tc;
    t.dt_max = dt_max;
    State s = elliptic_state(g, n, 0.0, 1.0);
    double dt = 0.0, prev_max = max_of(s.n);
    bool monotone = true;
    while (s.t < t.t_end) {
      s = step_elliptic(g, s, fd, 1.0, t, dt, opts);
      monotone = monotone && max_of(s.n) <= prev_max * (1.0 + 1e-12);
      prev_max = max_of(s.n);
    }
    CHECK(monotone);
    return second_moment(g, s.n) / integrate(g, s.n);
  };
  const double coarse = run_grid(50, 1e-4);
  const double fine = run_grid(500, 1e-5);
  CHECK(coarse == doctest::Approx(fine).epsilon(0.02));
}

TEST_CASE("relaxed potential") {
  const auto g = RadialGrid::uniform(3, 1.0, 60);
  const auto fd = EosModel::fermi_dirac(3);
  const Field n0 = gaussian(g, 0.2, 1.0);
  const auto target = poisson_solve(g, n0).phi;
  TimeControl tc;
  tc.dt_max = 1e-4;
  auto distance = [&](const Field& phi) {
    double m = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) m = std::max(m, std::abs(phi[i] - target[i]));
    return m;
  };
  double last = distance(Field(60, 0.0));
  for (double k : {1e1, 1e2, 1e3, 1e4}) {
    double dt = 0.0;
    const auto s = step_relaxed(g, relaxed_state(g, n0, 0.0, 1.0), fd, 1.0, RelaxationParams{k}, tc, dt);
    const double d = distance(s.phi);
    CHECK(d < last);
    last = d;
  }
  CHECK_THROWS_AS(RelaxationParams{0.0}.validate(), DomainError);

  // At phi = phi_ell the relaxed gradient is the elliptic one.
  const auto e = elliptic_state(g, n0, 0.0, 1.0);
  const auto grad = relaxed_face_gradient(g, n0, e.phi);
  for (std::size_t i = 0; i < grad.size(); ++i) CHECK(grad[i] == doctest::Approx(e.dphi[i]).epsilon(1e-10));
}

TEST_CASE("steady state residual") {
  const auto g = RadialGrid::uniform(3, 1.0, 100);
  const auto mb = EosModel::maxwell_boltzmann(3);
  const double theta = 1.0, M = 1.0;
  // Fixed point of n = c exp(-phi / theta) at mass M.
  Field n(100, M / g.ball_volume());
  for (int it = 0; it < 200; ++it) {
    const auto phi = poisson_solve(g, n).phi;
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = std::exp(-phi[i] / theta);
    const double m = integrate(g, n);
    for (auto& x : n) x *= M / m;
  }
  const auto s = elliptic_state(g, n, 0.0, theta);
  const double res = steady_state_residual(g, s, mb);
  CHECK(res <= 1e-6);
  CHECK(steady_state_residual(g, elliptic_state(g, gaussian(g, 0.2, M), 0.0, theta), mb) > 1e-3);
  CHECK_THROWS_AS(steady_state_residual(g, elliptic_state(g, Field(100, 0.0), 0.0, theta), mb), UndefinedResidual);

  TimeControl tc;
  tc.t_end = 0.05;
  const auto later = advance(g, s, mb, tc, {});
  CHECK(steady_state_residual(g, later, mb) <= 1e-5);
}

TEST_CASE("temperature schedules") {
  const auto c = ThetaSchedule::constant(2.0);
  CHECK(c(0.0) == 2.0);
  CHECK(c(5.0) == 2.0);
  CHECK(c.is_constant());
  const auto p = ThetaSchedule::piecewise_linear({0.0, 1.0, 2.0}, {1.0, 3.0, 3.0});
  CHECK_FALSE(p.is_constant());
  CHECK(p(-1.0) == 1.0);
  CHECK(p(0.5) == doctest::Approx(2.0));
  CHECK(p(10.0) == 3.0);
  CHECK(p.clamped(0.5, 2.5)(1.5) == 2.5);
  CHECK_THROWS_AS(ThetaSchedule::piecewise_linear({1.0, 0.5}, {1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(ThetaSchedule::constant(0.0), DomainError);
}

TEST_CASE("run outcomes and monitors") {
  SUBCASE("zero density") {
    auto cfg = parse_config(R"({"grid":{"d":3,"R":1,"N":30},"eos":{"kind":"fermi_dirac"},"mode":{"kind":"isothermal"},
      "initial":{"profile":"constant","mass":0},"time":{"t_end":0.01}})");
    const auto r = run(cfg);
    CHECK(r.outcome == Outcome::Completed);
    CHECK(max_of(r.final_state.n) == 0.0);
    CHECK(r.monitors.growth_violations == 0);
  }
  SUBCASE("Maxwell-Boltzmann free energy") {
    const auto r = run(parse_config(document("maxwell_boltzmann", "isothermal")));
    CHECK(r.outcome == Outcome::Completed);
    CHECK(r.monitors.lyapunov_monitored);
    CHECK(r.monitors.lyapunov_violations == 0);
    CHECK(r.monitors.mass_drift_max < 1e-13);
    CHECK(std::isinf(r.monitors.growth_constant_C));
  }
  SUBCASE("polytropic energy") {
    const auto r = run(parse_config(document("polytropic", "isothermal")));
    CHECK(r.outcome == Outcome::Completed);
    CHECK(r.monitors.energy_monitored);
    CHECK(r.monitors.energy_violations == 0);
    CHECK(r.monitors.growth_constant_C == 0.0);
  }
  SUBCASE("fixed energy") {
    const auto r = run(parse_config(document("fermi_dirac", "microcanonical")));
    CHECK(r.outcome == Outcome::Completed);
    CHECK(r.monitors.energy_error_max < 1e-9);
    CHECK(r.monitors.dp_integral_min > 0.0);
  }
  SUBCASE("collapse") {
    const auto r = run(parse_config(R"({"grid":{"d":3,"R":1,"N":100},"eos":{"kind":"maxwell_boltzmann"},
      "mode":{"kind":"isothermal"},"initial":{"profile":"gaussian","width":0.2,"mass":200},
      "time":{"t_end":1,"blowup_threshold":1e5}})"));
    CHECK(r.outcome == Outcome::BlowupDetected);
    CHECK(exit_code(r.outcome) == 2);
    CHECK(r.blowup_time > 0.0);
  }
}

TEST_CASE("invalid combinations are rejected before stepping") {
  try {
    run(parse_config(document("maxwell_boltzmann", "microcanonical").replace(
        document("maxwell_boltzmann", "microcanonical").find("\"mass\":0.5"), 10, "\"mass\":0.0")));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.path().rfind("initial", 0) == 0);
  }
  CHECK_THROWS_AS(parse_config(document("polytropic", "microcanonical")), ConfigError);
}

TEST_CASE("Fermi-Dirac relaxation toward equilibrium") {
  const auto g = RadialGrid::uniform(3, 1.0, 60);
  const auto fd = EosModel::fermi_dirac(3).tabulated();
  TimeControl tc;
  tc.t_end = 0.4;
  State s = elliptic_state(g, gaussian(g, 0.3, 1.0), 0.0, 1.0);
  double dt = 0.0, prev = steady_state_residual(g, s, fd);
  const double initial = prev;
  bool nonincreasing = true;
  int step = 0;
  while (s.t < tc.t_end) {
    s = step_elliptic(g, s, fd, 1.0, tc, dt);
    if (++step % 50 == 0 && s.t > 0.5 * tc.t_end) {
      const double res = steady_state_residual(g, s, fd);
      nonincreasing = nonincreasing && res <= prev * (1.0 + 1e-9);
      prev = res;
    }
  }
  CHECK(nonincreasing);
  CHECK(prev < 0.1 * initial);
}
