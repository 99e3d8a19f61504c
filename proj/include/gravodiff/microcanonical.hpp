#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gravodiff/eos.hpp"
#include "gravodiff/grid.hpp"

// Energy bookkeeping E = (d/2) int theta^{d/2+1} P(n theta^{-d/2}) + (1/2) int n phi
// and the per-step temperature solve of the fixed-energy setting.

namespace gravodiff {

struct TemperatureBracket {
  double a = 1e-3;
  double b = 1e3;
  void validate() const;
};

double thermal_energy(const RadialGrid& grid, const EosModel& model, const Field& n, double theta);
double potential_energy(const RadialGrid& grid, const Field& n, const Field& phi);

// (d/2) int dp/dtheta: the derivative of thermal_energy in theta.
double thermal_energy_slope(const RadialGrid& grid, const EosModel& model, const Field& n, double theta);

struct EnergyBudget {
  double E_target = 0.0;
  double thermal = 0.0;
  double potential = 0.0;
  TemperatureBracket bracket;
};

// theta in [a, b] with |thermal + potential - E_target| <= tol * max(1, |E_target|).
// `seed` (previous temperature) narrows the initial bracket.
// Throws DegenerateEos for polytropic models and BracketExit when E_target is
// not attainable on [a, b].
double solve_temperature(const RadialGrid& grid, const EosModel& model, const Field& n, const Field& phi,
                         double E_target, const TemperatureBracket& bracket, double tol,
                         std::optional<double> seed = std::nullopt);

struct AdmissibilityConstants {
  double epsilon = 0.0; // 0 selects p1 d / 4 (d / 4 when p1 = 0)
  double C = 1.0;
  double B = 1.0;
};

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool applicable = true;
  bool pass = true;
};

struct AdmissibilityReport {
  double nu = 0.0; // 4 / (d (4 - d)); NaN for d = 4
  std::vector<InequalityCheck> checks;
  bool all_pass() const;
};

// Diagnostic evaluation of the energy estimates E + C M^{1+nu} >= eps int n^{1+2/d},
// E + C M^{1+nu} >= |phi|_2^2, E >= eps int p + |int n phi| - C M^{1+nu}, and
// the window E < B M^{1+2/d} - C M^{1+nu}.
AdmissibilityReport admissibility_report(const RadialGrid& grid, const EosModel& model, const Field& n,
                                         const Field& phi, double theta, double E, double M,
                                         const AdmissibilityConstants& constants = {});

} // namespace gravodiff
