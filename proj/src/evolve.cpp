#include "gravodiff/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gravodiff/error.hpp"
#include "gravodiff/kernels.hpp"

namespace gravodiff {

void TimeControl::validate() const {
  if (!(cfl_safety > 0.0) || cfl_safety > 1.0) throw DomainError("cfl_safety must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw DomainError("dt_max must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be finite and >= 0");
  if (max_steps < 1) throw DomainError("max_steps must be at least 1");
  if (std::isnan(blowup_threshold)) throw DomainError("blowup_threshold is NaN");
}

void RelaxationParams::validate() const {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("relaxation rate k must be positive");
}

ThetaSchedule ThetaSchedule::constant(double theta) { return piecewise_linear({0.0}, {theta}); }

ThetaSchedule ThetaSchedule::piecewise_linear(std::vector<double> times, std::vector<double> values) {
  if (times.empty() || times.size() != values.size())
    throw DomainError("theta schedule needs matching, non-empty time and value lists");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !(values[i] > 0.0) || !std::isfinite(values[i]))
      throw DomainError("theta schedule entries must be finite with theta > 0");
    if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("theta schedule times must increase strictly");
  }
  ThetaSchedule s;
  s.times_ = std::move(times);
  s.values_ = std::move(values);
  return s;
}

ThetaSchedule ThetaSchedule::clamped(double a, double b) const {
  if (!(a > 0.0) || !(b > a)) throw DomainError("theta clamp needs 0 < a < b");
  ThetaSchedule s = *this;
  s.lo_ = a;
  s.hi_ = b;
  return s;
}

double ThetaSchedule::operator()(double t) const {
  double v;
  if (t <= times_.front()) {
    v = values_.front();
  } else if (t >= times_.back()) {
    v = values_.back();
  } else {
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - times_.begin());
    const double w = (t - times_[j - 1]) / (times_[j] - times_[j - 1]);
    v = (1.0 - w) * values_[j - 1] + w * values_[j];
  }
  return hi_ > 0.0 ? std::clamp(v, lo_, hi_) : v;
}

bool ThetaSchedule::is_constant() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [&](double v) { return v == values_.front(); });
}

State elliptic_state(const RadialGrid& grid, Field n, double t, double theta) {
  PoissonSolution ps = poisson_solve(grid, n);
  State s;
  s.t = t;
  s.n = std::move(n);
  s.phi = std::move(ps.phi);
  s.dphi = std::move(ps.dphi);
  s.theta = theta;
  return s;
}

State relaxed_state(const RadialGrid& grid, Field n, double t, double theta) {
  check_shape(grid, n, "relaxed_state");
  State s;
  s.t = t;
  s.phi.assign(n.size(), 0.0);
  s.dphi = relaxed_face_gradient(grid, n, s.phi);
  s.n = std::move(n);
  s.theta = theta;
  return s;
}

std::vector<double> relaxed_face_gradient(const RadialGrid& grid, const Field& n, const Field& phi) {
  check_shape(grid, phi, "relaxed_face_gradient");
  const PoissonSolution ps = poisson_solve(grid, n);
  Field gap(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) gap[i] = phi[i] - ps.phi[i];
  std::vector<double> g = difference_gradient(grid, gap);
  for (std::size_t f = 0; f < g.size(); ++f) g[f] += ps.dphi[f];
  return g;
}

namespace {

// Per-face coefficients of the flux; faces 0 and N stay zero (no flux).
struct FaceCoefficients {
  std::vector<double> diff, drift, inv_h;
};

FaceCoefficients face_coefficients(const RadialGrid& grid, const State& state, const EosModel& model,
                                   double theta, const StepOptions& opts) {
  const std::size_t N = state.n.size();
  if (state.dphi.size() != N + 1) throw ShapeMismatch("state: dphi needs one value per face");
  const double scale = std::pow(theta, -0.5 * grid.d());
  const auto& h = grid.face_spacing();
  FaceCoefficients c;
  c.diff.assign(N + 1, 0.0);
  c.drift.assign(N + 1, 0.0);
  c.inv_h.assign(N + 1, 0.0);
  for (std::size_t f = 1; f < N; ++f) {
    const double z = 0.5 * (state.n[f - 1] + state.n[f]) * scale;
    const double dP = model.dP(z);
    c.diff[f] = theta * dP * dP;
    c.drift[f] = opts.zero_drift ? 0.0 : dP * state.dphi[f];
    c.inv_h[f] = 1.0 / h[f];
  }
  return c;
}

double stable_dt_from(const RadialGrid& grid, const FaceCoefficients& c, const TimeControl& tc) {
  const std::size_t N = static_cast<std::size_t>(grid.cells());
  const auto& h = grid.face_spacing();
  double dt = std::numeric_limits<double>::infinity();
  for (std::size_t f = 1; f < N; ++f) {
    if (c.diff[f] > 0.0) dt = std::min(dt, h[f] * h[f] / (2.0 * c.diff[f]));
    if (c.drift[f] != 0.0) dt = std::min(dt, h[f] / std::fabs(c.drift[f]));
  }
  // Positivity: no cell may lose more than its own content in one step.
  const double rate = kernels::active().max_outflow_rate(N, grid.inverse_volume().data(), grid.face_area().data(),
                                                         c.diff.data(), c.drift.data(), c.inv_h.data());
  if (rate > 0.0) dt = std::min(dt, 1.0 / rate);
  return tc.cfl_safety * dt;
}

double capped_dt(double dt, const State& state, const TimeControl& tc) {
  dt = std::min(dt, tc.dt_max);
  const double remaining = tc.t_end - state.t;
  if (remaining > 0.0) dt = std::min(dt, remaining);
  if (!(dt > 0.0) || !std::isfinite(dt) || state.t + dt == state.t)
    throw StepFailure("time step underflow at t = " + std::to_string(state.t));
  return dt;
}

Field advance_density(const RadialGrid& grid, const State& state, const FaceCoefficients& c, double dt) {
  const std::size_t N = state.n.size();
  const auto& kt = kernels::active();
  std::vector<double> flux(N + 1, 0.0);
  kt.face_flux(N - 1, c.diff.data() + 1, c.drift.data() + 1, state.n.data(), state.n.data() + 1,
               c.inv_h.data() + 1, flux.data() + 1);
  Field n = state.n;
  kt.apply_divergence(N, dt, grid.inverse_volume().data(), grid.face_area().data(), flux.data(), n.data());
  const double n_max = *std::max_element(n.begin(), n.end());
  for (std::size_t i = 0; i < N; ++i) {
    if (!std::isfinite(n[i])) throw StepFailure("non-finite density in cell " + std::to_string(i));
    if (n[i] < 0.0) {
      if (n[i] < -1e-14 * n_max)
        throw StepFailure("density " + std::to_string(n[i]) + " below the clipping tolerance in cell " +
                          std::to_string(i));
      n[i] = 0.0;
    }
  }
  return n;
}

void check_state(const RadialGrid& grid, const State& state, double theta) {
  check_shape(grid, state.n, "state.n");
  check_shape(grid, state.phi, "state.phi");
  if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("step: theta must be positive");
}

} // namespace

double stable_dt(const RadialGrid& grid, const EosModel& model, const State& state, double theta,
                 const TimeControl& tc, const StepOptions& opts) {
  check_state(grid, state, theta);
  return stable_dt_from(grid, face_coefficients(grid, state, model, theta, opts), tc);
}

State step_elliptic(const RadialGrid& grid, const State& state, const EosModel& model, double theta,
                    const TimeControl& tc, double& dt_used, const StepOptions& opts) {
  check_state(grid, state, theta);
  const FaceCoefficients c = face_coefficients(grid, state, model, theta, opts);
  const double dt = capped_dt(stable_dt_from(grid, c, tc), state, tc);
  Field n = advance_density(grid, state, c, dt);
  dt_used = dt;
  return elliptic_state(grid, std::move(n), state.t + dt, theta);
}

State step_elliptic(const RadialGrid& grid, const State& state, const EosModel& model,
                    const ThetaSchedule& schedule, const TimeControl& tc, double& dt_used,
                    const StepOptions& opts) {
  return step_elliptic(grid, state, model, schedule(state.t), tc, dt_used, opts);
}

State step_relaxed(const RadialGrid& grid, const State& state, const EosModel& model, double theta,
                   const RelaxationParams& rp, const TimeControl& tc, double& dt_used,
                   const StepOptions& opts) {
  rp.validate();
  check_state(grid, state, theta);
  const FaceCoefficients c = face_coefficients(grid, state, model, theta, opts);
  const double dt = capped_dt(stable_dt_from(grid, c, tc), state, tc);
  Field n = advance_density(grid, state, c, dt);

  // (I - dt k L) phi_new = phi_old - dt k L phi_ell(n_new): the source is the
  // discrete Laplacian of the Poisson potential, so phi_ell is a fixed point.
  const Tridiagonal L = laplacian(grid);
  const Field source = gravodiff::apply(L, poisson_solve(grid, n).phi);
  const double s = dt * rp.k;
  Tridiagonal A = L;
  Field rhs(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    A.lower[i] *= -s;
    A.upper[i] *= -s;
    A.diag[i] = 1.0 - s * A.diag[i];
    rhs[i] = state.phi[i] - s * source[i];
  }
  State next;
  next.t = state.t + dt;
  next.phi = solve_tridiagonal(A, rhs);
  next.dphi = relaxed_face_gradient(grid, n, next.phi);
  next.n = std::move(n);
  next.theta = theta;
  dt_used = dt;
  return next;
}

double steady_state_residual(const RadialGrid& grid, const State& state, const EosModel& model) {
  check_shape(grid, state.n, "steady_state_residual");
  check_shape(grid, state.phi, "steady_state_residual");
  const double n_max = *std::max_element(state.n.begin(), state.n.end());
  if (!(n_max > 0.0)) throw UndefinedResidual("steady_state_residual: density vanishes everywhere");
  const double scale = std::pow(state.theta, -0.5 * grid.d());
  const auto& vol = grid.cell_volume();
  double weight = 0.0, mean = 0.0;
  std::vector<double> value(state.n.size(), 0.0);
  for (std::size_t i = 0; i < state.n.size(); ++i) {
    if (!(state.n[i] > 1e-12 * n_max)) continue;
    value[i] = state.theta * model.H(state.n[i] * scale) + state.phi[i];
    weight += vol[i];
    mean += vol[i] * value[i];
  }
  mean /= weight;
  double var = 0.0;
  for (std::size_t i = 0; i < state.n.size(); ++i)
    if (state.n[i] > 1e-12 * n_max) var += vol[i] * (value[i] - mean) * (value[i] - mean);
  return std::sqrt(var / weight);
}

} // namespace gravodiff
