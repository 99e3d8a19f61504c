#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "gravodiff/eos.hpp"
#include "gravodiff/evolve.hpp"
#include "gravodiff/grid.hpp"

namespace gravodiff {

enum class Coupling { Elliptic, Relaxed };

struct DiagnosticsRecord {
  double t = 0.0;
  double theta = 0.0;
  double mass = 0.0;
  double E = 0.0;
  double E_thermal = 0.0;
  double E_potential = 0.0;
  double E_asymptotic = 0.0;
  double W = 0.0;
  double V = 0.0;
  double n_max = 0.0;
  double norm_L2 = 0.0;
  double norm_L1p2d = 0.0;
  double norm_L2_grad_phi = 0.0;
  double dt_used = 0.0;
  double growth_residual = 0.0;
  double lyapunov_delta = 0.0;
};

// CSV column names, in serialization order.
inline constexpr std::array<std::string_view, 16> kRecordColumns = {
    "t", "theta", "mass", "E", "E_thermal", "E_potential", "E_asymptotic", "W", "V", "n_max",
    "norm_L2", "norm_L1p2d", "norm_L2_grad_phi", "dt_used", "growth_residual", "lyapunov_delta"};

std::array<double, 16> record_values(const DiagnosticsRecord& r);

// (d/2) int p1 n^{1+2/d} - (1/2) int |grad phi|^2, the gradient term by face quadrature.
double asymptotic_energy(const RadialGrid& grid, const EosModel& model, const Field& n,
                         const std::vector<double>& dphi);

// int (n H(z) - (d/2+1) P(z) theta^{d/2}), z = n theta^{-d/2}; n H is 0 where n < 1e-30.
double neg_entropy(const RadialGrid& grid, const EosModel& model, const Field& n, double theta);

// (d/2) int p1 n^{1+2/d} + int n phi + (1/2) int |grad phi|^2.
double v_functional(const RadialGrid& grid, const EosModel& model, const Field& n, const Field& phi,
                    const std::vector<double>& dphi);

// int n^{1+2/d}
double density_power_integral(const RadialGrid& grid, const Field& n);

// int dp/dtheta (n, theta): the lower bound C_M tracked in fixed-energy runs.
double pressure_temperature_slope(const RadialGrid& grid, const EosModel& model, const Field& n, double theta);

// All record fields except dt_used, growth_residual and lyapunov_delta.
DiagnosticsRecord make_record(const RadialGrid& grid, const EosModel& model, const State& state);

// (Q(cur) - Q(prev)) / (t_cur - t_prev) - C * avg(theta^{d/2} |grad phi|_2^2) with the
// trapezoid average over the two records; Q = E^a (elliptic) or V (relaxed).
// Throws DomainError unless t_cur > t_prev. Returns -inf when C is infinite.
double growth_check(const DiagnosticsRecord& prev, const DiagnosticsRecord& cur, double growth_constant_C,
                    Coupling coupling, int d);

// Discretization allowance of the growth monitor: 10 (dt + dr^2).
double growth_tolerance(double dt, double dr);

// Ratios of |int n phi| to its bounds:
//   M^{1-2/d} int n^{1+2/d}
//   M^{1/2-1/d} (int n^{1+2/d} + int |grad phi|^2)
//   C M^{7/3} + (d/2) int n^{5/3}          (d = 3 only; NaN otherwise)
struct PotentialRatios {
  double domination = 0.0;
  double interpolation = 0.0;
  double refined = 0.0;
};
PotentialRatios potential_ratios(const RadialGrid& grid, const State& state, double mass, double C_refined);

} // namespace gravodiff
