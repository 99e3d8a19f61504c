#include "gravodiff/run.hpp"

#include <algorithm>
#include <cmath>

#include "gravodiff/error.hpp"

namespace gravodiff {

std::string to_string(Outcome outcome) {
  switch (outcome) {
  case Outcome::Completed: return "completed";
  case Outcome::BlowupDetected: return "blowup-detected";
  case Outcome::TemperatureBracketExit: return "temperature-bracket-exit";
  case Outcome::StepFailure: return "step-failure";
  }
  return "unknown";
}

int exit_code(Outcome outcome) {
  switch (outcome) {
  case Outcome::Completed: return 0;
  case Outcome::BlowupDetected: return 2;
  case Outcome::TemperatureBracketExit: return 3;
  case Outcome::StepFailure: return 4;
  }
  return 1;
}

namespace {

bool increased(double prev, double cur) { return cur > prev + 1e-10 * (1.0 + std::fabs(prev)); }

class Monitor {
public:
  Monitor(const RunConfig& cfg, const RadialGrid& grid, const EosModel& model, const DiagnosticsRecord& first,
          MonitorSummary& out)
      : cfg_(cfg), grid_(grid), model_(model), out_(out), mass0_(first.mass), Ea0_(first.E_asymptotic) {
    const int d = grid.d();
    dr_ = *std::max_element(grid.widths().begin(), grid.widths().end());
    const bool elliptic_isothermal = cfg.mode.kind == Mode::Isothermal && cfg.mode.theta.is_constant();
    out_.lyapunov_monitored = elliptic_isothermal;
    out_.energy_monitored = elliptic_isothermal && model.kind() == EosKind::Polytropic;
    const double C = out_.growth_constant_C;
    const bool small = model.p1() > 0.0 && C * std::pow(mass0_, 1.0 - 2.0 / d) < d * model.p1();
    out_.positivity_monitored = cfg.mode.kind != Mode::Relaxed && small && Ea0_ > 0.0 &&
                                !(d == 2 && cfg.constants.relax_d2_positivity);
    rate_ = model.p1() > 0.0 && std::isfinite(C) ? C / model.p1() * std::pow(mass0_, 1.0 - 2.0 / d) : 0.0;
  }

  void step(const DiagnosticsRecord& prev, const DiagnosticsRecord& cur) {
    ++out_.steps;
    const double drift = mass0_ > 0.0 ? std::fabs(cur.mass - mass0_) / mass0_ : std::fabs(cur.mass);
    out_.mass_drift_max = std::max(out_.mass_drift_max, drift);
    if (cur.growth_residual > out_.growth_residual_max || std::isnan(cur.growth_residual))
      out_.growth_residual_max = cur.growth_residual;
    if (!(cur.growth_residual <= growth_tolerance(cur.dt_used, dr_))) ++out_.growth_violations;
    const double half_d = 0.5 * grid_.d();
    theta_integral_ += 0.5 * (std::pow(prev.theta, half_d) + std::pow(cur.theta, half_d)) * (cur.t - prev.t);
  }

  void record(const DiagnosticsRecord* prev, const DiagnosticsRecord& cur, const State& state) {
    out_.theta_min = std::min(out_.theta_min, cur.theta);
    out_.theta_max = std::max(out_.theta_max, cur.theta);
    if (prev) {
      if (out_.lyapunov_monitored && increased(prev->W, cur.W)) ++out_.lyapunov_violations;
      if (out_.energy_monitored && increased(prev->E, cur.E)) ++out_.energy_violations;
    }
    if (cfg_.mode.kind == Mode::Microcanonical) {
      const double err = std::fabs(cur.E - out_.E_target) / std::max(1.0, std::fabs(out_.E_target));
      out_.energy_error_max = std::max(out_.energy_error_max, err);
      out_.dp_integral_min =
          std::min(out_.dp_integral_min, pressure_temperature_slope(grid_, model_, state.n, state.theta));
      if (prev) out_.theta_increments.push_back(cur.theta - prev->theta);
    }
    if (out_.positivity_monitored && !(cur.E_asymptotic > 0.0)) ++out_.positivity_violations;
    if (rate_ > 0.0 && Ea0_ > 0.0 && cur.E_asymptotic > Ea0_ * std::exp(rate_ * theta_integral_) * (1.0 + 1e-10))
      ++out_.growth_bound_exceedances;

    if (cur.mass > 0.0) {
      const PotentialRatios r = potential_ratios(grid_, state, cur.mass, cfg_.constants.C_refined);
      out_.ratio_domination_max = std::max(out_.ratio_domination_max, r.domination);
      out_.ratio_interpolation_max = std::max(out_.ratio_interpolation_max, r.interpolation);
      const double ceiling = cfg_.constants.ratio_ceiling;
      if (!(r.domination <= ceiling) || !(r.interpolation <= ceiling)) ++out_.ratio_ceiling_violations;
      if (grid_.d() == 3) {
        out_.ratio_refined_max = std::max(out_.ratio_refined_max, r.refined);
        if (cfg_.constants.C_refined_certified && !(r.refined <= 1.0)) ++out_.refined_violations;
      }
      if (out_.lyapunov_monitored) out_.steady_residual.push_back(steady_state_residual(grid_, state, model_));
    }
  }

private:
  const RunConfig& cfg_;
  const RadialGrid& grid_;
  const EosModel& model_;
  MonitorSummary& out_;
  double mass0_, Ea0_;
  double dr_ = 0.0;
  double rate_ = 0.0;
  double theta_integral_ = 0.0;
};

} // namespace

RunResult run(const RunConfig& config, const RunOptions& options) {
  validate(config);
  const RadialGrid grid = build_grid(config);
  EosModel model = build_eos(config);
  if (options.tamper_p1 != 1.0) model = model.tampered_p1(options.tamper_p1);
  const ModeSpec& mode = config.mode;
  const ThetaSchedule schedule = mode.theta.clamped(mode.bracket.a, mode.bracket.b);
  const TimeControl& tc = config.time;
  const Coupling coupling = mode.kind == Mode::Relaxed ? Coupling::Relaxed : Coupling::Elliptic;

  Field n0 = initial_density(config, grid);
  const double mass0 = integrate(grid, n0);

  RunResult result;
  MonitorSummary& mon = result.monitors;
  try {
    mon.growth_constant_C = structural_audit(model, default_audit_samples()).growth_constant_C;
  } catch (const StructuralViolation& e) {
    // Without certified constants the growth monitor cannot pass.
    mon.growth_constant_C = std::numeric_limits<double>::quiet_NaN();
    mon.audit_failure = e.what();
  }

  State state;
  if (mode.kind == Mode::Microcanonical) {
    if (!(mass0 > 0.0))
      throw ConfigError("initial", "microcanonical mode needs positive mass: the energy does not fix theta when n = 0");
    state = elliptic_state(grid, std::move(n0), 0.0, mode.theta0);
    mon.E_target = mode.E_target ? *mode.E_target
                                 : thermal_energy(grid, model, state.n, mode.theta0) +
                                       potential_energy(grid, state.n, state.phi);
    try {
      state.theta = solve_temperature(grid, model, state.n, state.phi, mon.E_target, mode.bracket, mode.tol,
                                      mode.theta0);
    } catch (const BracketExit& e) {
      throw ConfigError("mode.E_target", e.what());
    }
  } else if (mode.kind == Mode::Relaxed) {
    state = relaxed_state(grid, std::move(n0), 0.0, schedule(0.0));
  } else {
    state = elliptic_state(grid, std::move(n0), 0.0, schedule(0.0));
  }

  const double threshold = tc.blowup_threshold > 0.0 ? tc.blowup_threshold
                           : mass0 > 0.0           ? 1e6 * mass0 / grid.ball_volume()
                                                   : std::numeric_limits<double>::infinity();

  DiagnosticsRecord last = make_record(grid, model, state);
  Monitor monitor(config, grid, model, last, mon);
  mon.admissibility = admissibility_report(grid, model, state.n, state.phi, state.theta, last.E, last.mass,
                                           {config.constants.epsilon, config.constants.C_energy,
                                            config.constants.B_window});
  auto emit = [&](const DiagnosticsRecord& r, const DiagnosticsRecord* prev) {
    monitor.record(prev, r, state);
    result.records.push_back(r);
    if (options.on_record) options.on_record(r);
  };
  emit(last, nullptr);
  DiagnosticsRecord last_emitted = last;
  bool pending = false;

  for (long step = 1; step <= tc.max_steps && state.t < tc.t_end; ++step) {
    double dt = 0.0;
    State next;
    try {
      const double theta = mode.kind == Mode::Microcanonical ? state.theta : schedule(state.t);
      if (coupling == Coupling::Relaxed)
        next = step_relaxed(grid, state, model, theta, mode.relaxation, tc, dt, options.step);
      else
        next = step_elliptic(grid, state, model, theta, tc, dt, options.step);
      if (mode.kind == Mode::Microcanonical)
        next.theta = solve_temperature(grid, model, next.n, next.phi, mon.E_target, mode.bracket, mode.tol, state.theta);
      else
        next.theta = schedule(next.t);
    } catch (const BracketExit& e) {
      result.outcome = Outcome::TemperatureBracketExit;
      result.message = e.what();
      break;
    } catch (const Error& e) {
      result.outcome = Outcome::StepFailure;
      result.message = e.what();
      break;
    }
    state = std::move(next);

    DiagnosticsRecord cur = make_record(grid, model, state);
    cur.dt_used = dt;
    cur.growth_residual = growth_check(last, cur, mon.growth_constant_C, coupling, grid.d());
    monitor.step(last, cur);
    last = cur;
    pending = true;

    const bool blowup = cur.n_max > threshold;
    if (step % config.output.cadence_steps == 0 || blowup) {
      cur.lyapunov_delta = cur.W - last_emitted.W;
      emit(cur, &last_emitted);
      last_emitted = cur;
      pending = false;
    }
    if (blowup) {
      result.outcome = Outcome::BlowupDetected;
      result.blowup_time = cur.t;
      result.message = "density maximum exceeded the blow-up threshold";
      break;
    }
  }
  if (pending) {
    last.lyapunov_delta = last.W - last_emitted.W;
    emit(last, &last_emitted);
  }
  result.final_state = std::move(state);
  return result;
}

} // namespace gravodiff
