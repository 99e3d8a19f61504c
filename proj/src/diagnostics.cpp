#include "gravodiff/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gravodiff/error.hpp"
#include "gravodiff/microcanonical.hpp"

namespace gravodiff {

std::array<double, 16> record_values(const DiagnosticsRecord& r) {
  return {r.t,     r.theta,  r.mass,    r.E,          r.E_thermal,        r.E_potential,
          r.E_asymptotic, r.W, r.V,     r.n_max,      r.norm_L2,          r.norm_L1p2d,
          r.norm_L2_grad_phi, r.dt_used, r.growth_residual, r.lyapunov_delta};
}

double density_power_integral(const RadialGrid& grid, const Field& n) {
  check_shape(grid, n, "density_power_integral");
  const double exponent = 1.0 + 2.0 / grid.d();
  Field q(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) q[i] = std::pow(std::max(n[i], 0.0), exponent);
  return integrate(grid, q);
}

double asymptotic_energy(const RadialGrid& grid, const EosModel& model, const Field& n,
                         const std::vector<double>& dphi) {
  const double half_d = 0.5 * grid.d();
  return half_d * model.p1() * density_power_integral(grid, n) - 0.5 * gradient_energy(grid, dphi);
}

double neg_entropy(const RadialGrid& grid, const EosModel& model, const Field& n, double theta) {
  check_shape(grid, n, "neg_entropy");
  if (!(theta > 0.0)) throw DomainError("neg_entropy: theta must be positive");
  const double half_d = 0.5 * grid.d();
  const double scale = std::pow(theta, -half_d);
  const double weight = (half_d + 1.0) * std::pow(theta, half_d);
  Field w(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double z = n[i] * scale;
    const double entropy = n[i] < 1e-30 ? 0.0 : n[i] * model.H(z);
    w[i] = entropy - weight * model.P(z);
  }
  return integrate(grid, w);
}

double v_functional(const RadialGrid& grid, const EosModel& model, const Field& n, const Field& phi,
                    const std::vector<double>& dphi) {
  const double half_d = 0.5 * grid.d();
  return half_d * model.p1() * density_power_integral(grid, n) + integrate_product(grid, n, phi) +
         0.5 * gradient_energy(grid, dphi);
}

double pressure_temperature_slope(const RadialGrid& grid, const EosModel& model, const Field& n, double theta) {
  return thermal_energy_slope(grid, model, n, theta) / (0.5 * grid.d());
}

DiagnosticsRecord make_record(const RadialGrid& grid, const EosModel& model, const State& state) {
  DiagnosticsRecord r;
  r.t = state.t;
  r.theta = state.theta;
  r.mass = integrate(grid, state.n);
  r.E_thermal = thermal_energy(grid, model, state.n, state.theta);
  r.E_potential = potential_energy(grid, state.n, state.phi);
  r.E = r.E_thermal + r.E_potential;
  const double half_d = 0.5 * grid.d();
  const double power = density_power_integral(grid, state.n);
  const double grad_sq = gradient_energy(grid, state.dphi);
  r.E_asymptotic = half_d * model.p1() * power - 0.5 * grad_sq;
  r.V = half_d * model.p1() * power + 2.0 * r.E_potential + 0.5 * grad_sq;
  r.W = neg_entropy(grid, model, state.n, state.theta);
  r.n_max = state.n.empty() ? 0.0 : *std::max_element(state.n.begin(), state.n.end());
  r.norm_L2 = lp_norm(grid, state.n, 2.0);
  r.norm_L1p2d = std::pow(power, 1.0 / (1.0 + 2.0 / grid.d()));
  r.norm_L2_grad_phi = std::sqrt(grad_sq);
  return r;
}

double growth_check(const DiagnosticsRecord& prev, const DiagnosticsRecord& cur, double growth_constant_C,
                    Coupling coupling, int d) {
  if (!(cur.t > prev.t)) throw DomainError("growth_check: records must be consecutive in time");
  if (std::isinf(growth_constant_C)) return -std::numeric_limits<double>::infinity();
  const double q_prev = coupling == Coupling::Elliptic ? prev.E_asymptotic : prev.V;
  const double q_cur = coupling == Coupling::Elliptic ? cur.E_asymptotic : cur.V;
  const double half_d = 0.5 * d;
  const double rhs_prev = std::pow(prev.theta, half_d) * prev.norm_L2_grad_phi * prev.norm_L2_grad_phi;
  const double rhs_cur = std::pow(cur.theta, half_d) * cur.norm_L2_grad_phi * cur.norm_L2_grad_phi;
  return (q_cur - q_prev) / (cur.t - prev.t) - growth_constant_C * 0.5 * (rhs_prev + rhs_cur);
}

double growth_tolerance(double dt, double dr) { return 10.0 * (dt + dr * dr); }

PotentialRatios potential_ratios(const RadialGrid& grid, const State& state, double mass, double C_refined) {
  const int d = grid.d();
  const double coupling = std::fabs(integrate_product(grid, state.n, state.phi));
  const double power = density_power_integral(grid, state.n);
  const double grad_sq = gradient_energy(grid, state.dphi);
  auto ratio = [&](double den) { return coupling == 0.0 ? 0.0 : coupling / den; };
  PotentialRatios r;
  r.domination = ratio(std::pow(mass, 1.0 - 2.0 / d) * power);
  r.interpolation = ratio(std::pow(mass, 0.5 - 1.0 / d) * (power + grad_sq));
  if (d == 3) {
    Field q(state.n.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::pow(std::max(state.n[i], 0.0), 5.0 / 3.0);
    r.refined = ratio(C_refined * std::pow(mass, 7.0 / 3.0) + 1.5 * integrate(grid, q));
  } else {
    r.refined = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

} // namespace gravodiff
