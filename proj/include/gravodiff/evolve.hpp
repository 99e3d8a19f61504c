#pragma once

#include <vector>

#include "gravodiff/eos.hpp"
#include "gravodiff/grid.hpp"

// Explicit conservative stepping of n_t = div(theta P'^2 grad n + n P' grad phi)
// with no-flux walls, coupled either to the Poisson equation (elliptic) or to
// phi_t = k (Laplace(phi) - n) (relaxed).

namespace gravodiff {

struct State {
  double t = 0.0;
  Field n;
  Field phi;
  std::vector<double> dphi; // face gradients, faces 0..N
  double theta = 1.0;
};

struct TimeControl {
  double cfl_safety = 0.5;
  double dt_max = 1e-2;
  double t_end = 1.0;
  long max_steps = 1000000;
  double blowup_threshold = 0.0; // <= 0: 1e6 times the initial mean density
  void validate() const;
};

struct RelaxationParams {
  double k = 1e3;
  void validate() const;
};

// Constant or piecewise-linear temperature, clamped to [a, b].
class ThetaSchedule {
public:
  static ThetaSchedule constant(double theta);
  static ThetaSchedule piecewise_linear(std::vector<double> times, std::vector<double> values);

  ThetaSchedule clamped(double a, double b) const;
  double operator()(double t) const;
  bool is_constant() const noexcept;
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<double>& values() const noexcept { return values_; }

private:
  std::vector<double> times_, values_;
  double lo_ = 0.0, hi_ = 0.0; // clamp range; hi_ = 0 means none
};

struct StepOptions {
  // Test hook: drops the drift term, leaving pure nonlinear diffusion.
  bool zero_drift = false;
};

// Elliptic state from a density: phi and dphi from poisson_solve.
State elliptic_state(const RadialGrid& grid, Field n, double t, double theta);

// Relaxed start: phi = 0 and the face gradient of the zero potential.
State relaxed_state(const RadialGrid& grid, Field n, double t, double theta);

// Face gradient used by the relaxed drift: grad phi_ell(n) + D(phi - phi_ell(n)),
// equal to the elliptic gradient whenever phi equals the Poisson potential.
std::vector<double> relaxed_face_gradient(const RadialGrid& grid, const Field& n, const Field& phi);

// Largest stable step at the given temperature (CFL and positivity), before
// the dt_max and t_end caps.
double stable_dt(const RadialGrid& grid, const EosModel& model, const State& state, double theta,
                 const TimeControl& tc, const StepOptions& opts = {});

// One step at temperature theta. Throws StepFailure on dt underflow or density
// below the clipping tolerance. Returns the step size in `dt_used`.
State step_elliptic(const RadialGrid& grid, const State& state, const EosModel& model, double theta,
                    const TimeControl& tc, double& dt_used, const StepOptions& opts = {});
State step_elliptic(const RadialGrid& grid, const State& state, const EosModel& model,
                    const ThetaSchedule& schedule, const TimeControl& tc, double& dt_used,
                    const StepOptions& opts = {});

State step_relaxed(const RadialGrid& grid, const State& state, const EosModel& model, double theta,
                   const RelaxationParams& rp, const TimeControl& tc, double& dt_used,
                   const StepOptions& opts = {});

// Volume-weighted spatial standard deviation of theta H(n theta^{-d/2}) + phi
// over cells with n > 1e-12 n_max. Throws UndefinedResidual when n vanishes.
double steady_state_residual(const RadialGrid& grid, const State& state, const EosModel& model);

} // namespace gravodiff
