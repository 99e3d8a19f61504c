#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gravodiff/config.hpp"
#include "gravodiff/diagnostics.hpp"
#include "gravodiff/evolve.hpp"
#include "gravodiff/microcanonical.hpp"

namespace gravodiff {

enum class Outcome { Completed, BlowupDetected, TemperatureBracketExit, StepFailure };

std::string to_string(Outcome outcome);
// 0 completed, 2 blow-up, 3 bracket exit, 4 step failure.
int exit_code(Outcome outcome);

// Per-run monitor results. Counters stay 0 when the corresponding monitor
// does not apply (its `_monitored` flag is false).
struct MonitorSummary {
  long steps = 0;
  double mass_drift_max = 0.0; // max |M(t) - M(0)| / M(0); absolute when M(0) = 0

  double growth_constant_C = 0.0; // NaN when the EOS audit failed
  std::string audit_failure;
  long growth_violations = 0; // per step, beyond 10 (dt + dr^2)
  double growth_residual_max = -std::numeric_limits<double>::infinity();

  bool lyapunov_monitored = false; // elliptic, isothermal, constant theta
  long lyapunov_violations = 0;
  bool energy_monitored = false; // polytropic, elliptic, isothermal, constant theta
  long energy_violations = 0;

  // fixed energy
  double E_target = 0.0;
  double energy_error_max = 0.0; // |E - E_target| / max(1, |E_target|) over records
  double dp_integral_min = std::numeric_limits<double>::infinity(); // C_M
  std::vector<double> theta_increments;

  double theta_min = std::numeric_limits<double>::infinity();
  double theta_max = -std::numeric_limits<double>::infinity();

  // E^a > 0 when C M^{1-2/d} < d p1 and E^a(0) > 0
  bool positivity_monitored = false;
  long positivity_violations = 0;
  // soft: E^a(t) <= E^a(0) exp((C / p1) M^{1-2/d} int theta^{d/2})
  long growth_bound_exceedances = 0;

  double ratio_domination_max = 0.0;
  double ratio_interpolation_max = 0.0;
  double ratio_refined_max = 0.0; // d = 3 only
  long ratio_ceiling_violations = 0;
  long refined_violations = 0; // only with a certified constant

  std::vector<double> steady_residual; // per record, isothermal constant theta elliptic runs

  AdmissibilityReport admissibility; // of the initial state
};

struct RunResult {
  Outcome outcome = Outcome::Completed;
  std::string message;
  State final_state;
  std::vector<DiagnosticsRecord> records;
  MonitorSummary monitors;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
};

struct RunOptions {
  StepOptions step;
  // Multiplies the reported p1 of the EOS (fault injection).
  double tamper_p1 = 1.0;
  std::function<void(const DiagnosticsRecord&)> on_record;
};

// Validates the combination (ConfigError before any step), then integrates.
RunResult run(const RunConfig& config, const RunOptions& options = {});

} // namespace gravodiff
