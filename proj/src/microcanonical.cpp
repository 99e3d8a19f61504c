#include "gravodiff/microcanonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gravodiff/error.hpp"

namespace gravodiff {

void TemperatureBracket::validate() const {
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
    throw DomainError("temperature bracket needs 0 < a < b < inf");
}

double thermal_energy(const RadialGrid& grid, const EosModel& model, const Field& n, double theta) {
  check_shape(grid, n, "thermal_energy");
  if (!(theta > 0.0)) throw DomainError("thermal_energy: theta must be positive");
  const double half_d = 0.5 * grid.d();
  const double scale = std::pow(theta, -half_d);
  Field p(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) p[i] = model.P(n[i] * scale);
  return half_d * std::pow(theta, half_d + 1.0) * integrate(grid, p);
}

double potential_energy(const RadialGrid& grid, const Field& n, const Field& phi) {
  return 0.5 * integrate_product(grid, n, phi);
}

double thermal_energy_slope(const RadialGrid& grid, const EosModel& model, const Field& n, double theta) {
  check_shape(grid, n, "thermal_energy_slope");
  Field q(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) q[i] = dp_dtheta(model, n[i], theta);
  return 0.5 * grid.d() * integrate(grid, q);
}

double solve_temperature(const RadialGrid& grid, const EosModel& model, const Field& n, const Field& phi,
                         double E_target, const TemperatureBracket& bracket, double tol,
                         std::optional<double> seed) {
  bracket.validate();
  if (!(tol > 0.0)) throw DomainError("solve_temperature: tol must be positive");
  if (!std::isfinite(E_target)) throw DomainError("solve_temperature: non-finite energy target");
  if (model.kind() == EosKind::Polytropic)
    throw DegenerateEos("polytropic pressure has dp/dtheta = 0: the energy does not determine theta");

  const double U = potential_energy(grid, n, phi);
  const double tol_abs = tol * std::max(1.0, std::fabs(E_target));
  auto residual = [&](double theta) { return thermal_energy(grid, model, n, theta) + U - E_target; };

  double lo = bracket.a, hi = bracket.b;
  const double f_lo = residual(lo), f_hi = residual(hi);
  if (f_lo > tol_abs || f_hi < -tol_abs) throw BracketExit(E_target, f_lo + E_target, f_hi + E_target);
  if (std::fabs(f_lo) <= tol_abs && std::fabs(f_hi) <= tol_abs) {
    // Flat map (n = 0): every theta is admissible; keep the previous one.
    return std::clamp(seed.value_or(std::sqrt(lo * hi)), lo, hi);
  }

  double theta = seed && *seed > lo && *seed < hi ? *seed : std::sqrt(lo * hi);
  double f = residual(theta);
  // Safeguarded Newton: the bracket [lo, hi] always straddles the root; a
  // Newton step leaving it is replaced by bisection in log(theta).
  for (int iter = 0; iter < 200 && std::fabs(f) > tol_abs; ++iter) {
    if (f < 0.0) lo = theta; else hi = theta;
    const double slope = thermal_energy_slope(grid, model, n, theta);
    double next = slope > 0.0 ? theta - f / slope : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
    if (next == theta || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    theta = next;
    f = residual(theta);
  }

  // One derivative polish, kept only if it does not worsen the residual.
  const double slope = thermal_energy_slope(grid, model, n, theta);
  if (slope > 0.0) {
    const double polished = std::clamp(theta - f / slope, bracket.a, bracket.b);
    const double f_polished = residual(polished);
    if (std::fabs(f_polished) <= std::fabs(f)) {
      theta = polished;
      f = f_polished;
    }
  }
  if (std::fabs(f) > tol_abs) throw BracketExit(E_target, f_lo + E_target, f_hi + E_target);
  return theta;
}

bool AdmissibilityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return !c.applicable || c.pass; });
}

AdmissibilityReport admissibility_report(const RadialGrid& grid, const EosModel& model, const Field& n,
                                         const Field& phi, double theta, double E, double M,
                                         const AdmissibilityConstants& constants) {
  check_shape(grid, n, "admissibility_report");
  check_shape(grid, phi, "admissibility_report");
  const int d = grid.d();
  const double exponent = 1.0 + 2.0 / d;
  AdmissibilityReport report;
  const bool has_nu = d < 4;
  report.nu = has_nu ? 4.0 / (d * (4.0 - d)) : std::numeric_limits<double>::quiet_NaN();

  double eps = constants.epsilon;
  if (!(eps > 0.0)) eps = model.p1() > 0.0 ? model.p1() * d / 4.0 : d / 4.0;

  Field power(n.size()), phi_sq(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    power[i] = std::pow(std::max(n[i], 0.0), exponent);
    phi_sq[i] = phi[i] * phi[i];
  }
  const double density_term = integrate(grid, power);
  const double phi_norm_sq = integrate(grid, phi_sq);
  const double pressure_term = thermal_energy(grid, model, n, theta) / (0.5 * d);
  const double coupling = std::fabs(integrate_product(grid, n, phi));
  const double mass_term = has_nu ? constants.C * std::pow(M, 1.0 + report.nu) : 0.0;

  auto add = [&](const char* name, double lhs, double rhs, bool strict, bool applicable) {
    InequalityCheck c{name, lhs, rhs, applicable, true};
    if (applicable) c.pass = strict ? lhs < rhs : lhs >= rhs;
    report.checks.push_back(c);
  };
  add("energy_controls_density", E + mass_term, eps * density_term, false, has_nu);
  add("energy_controls_potential", E + mass_term, phi_norm_sq, false, has_nu);
  add("energy_lower_bound", E, eps * pressure_term + coupling - mass_term, false, has_nu);
  // The window is strict and says nothing at M = 0.
  add("admissible_window", E, constants.B * std::pow(M, exponent) - mass_term, true, has_nu && M > 0.0);
  return report;
}

} // namespace gravodiff
