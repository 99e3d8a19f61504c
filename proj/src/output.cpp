#include "gravodiff/output.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace gravodiff {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv_header(std::ostream& out) {
  for (std::size_t i = 0; i < kRecordColumns.size(); ++i) out << (i ? "," : "") << kRecordColumns[i];
  out << '\n';
}

void write_csv_row(std::ostream& out, const DiagnosticsRecord& r) {
  const auto values = record_values(r);
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << format_double(values[i]);
  out << '\n';
}

void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
  write_csv_header(out);
  for (const auto& r : records) write_csv_row(out, r);
}

namespace {

// JSON has no inf/nan; they are written as strings.
json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

json record_object(const DiagnosticsRecord& r) {
  json o = json::object();
  const auto values = record_values(r);
  for (std::size_t i = 0; i < values.size(); ++i) o[std::string(kRecordColumns[i])] = number(values[i]);
  return o;
}

json monitors_object(const MonitorSummary& m) {
  json o = {
      {"steps", m.steps},
      {"mass_drift_max", number(m.mass_drift_max)},
      {"growth_constant_C", number(m.growth_constant_C)},
      {"audit_failure", m.audit_failure},
      {"growth_violations", m.growth_violations},
      {"growth_residual_max", number(m.growth_residual_max)},
      {"lyapunov_monitored", m.lyapunov_monitored},
      {"lyapunov_violations", m.lyapunov_violations},
      {"energy_monitored", m.energy_monitored},
      {"energy_violations", m.energy_violations},
      {"E_target", number(m.E_target)},
      {"energy_error_max", number(m.energy_error_max)},
      {"dp_integral_min", number(m.dp_integral_min)},
      {"theta_min", number(m.theta_min)},
      {"theta_max", number(m.theta_max)},
      {"positivity_monitored", m.positivity_monitored},
      {"positivity_violations", m.positivity_violations},
      {"growth_bound_exceedances", m.growth_bound_exceedances},
      {"ratio_domination_max", number(m.ratio_domination_max)},
      {"ratio_interpolation_max", number(m.ratio_interpolation_max)},
      {"ratio_refined_max", number(m.ratio_refined_max)},
      {"ratio_ceiling_violations", m.ratio_ceiling_violations},
      {"refined_violations", m.refined_violations},
  };
  json checks = json::array();
  for (const auto& c : m.admissibility.checks)
    checks.push_back({{"name", c.name},
                      {"lhs", number(c.lhs)},
                      {"rhs", number(c.rhs)},
                      {"applicable", c.applicable},
                      {"pass", c.pass}});
  o["admissibility"] = {{"nu", number(m.admissibility.nu)}, {"checks", checks}};
  return o;
}

} // namespace

std::string record_json(const DiagnosticsRecord& r) { return record_object(r).dump(); }

std::string monitors_json(const MonitorSummary& m) { return monitors_object(m).dump(); }

std::string snapshot_json(const RunConfig& config, const RunResult& result) {
  json o;
  o["outcome"] = to_string(result.outcome);
  o["message"] = result.message;
  o["mode"] = to_string(config.mode.kind);
  o["eos"] = to_string(config.eos.kind);
  o["d"] = config.grid.d;
  o["N"] = config.grid.N;
  o["blowup_time"] = number(result.blowup_time);
  if (!result.records.empty()) o["final"] = record_object(result.records.back());
  o["state"] = {{"t", number(result.final_state.t)},
                {"theta", number(result.final_state.theta)},
                {"n", numbers(result.final_state.n)},
                {"phi", numbers(result.final_state.phi)}};
  o["monitors"] = monitors_object(result.monitors);
  o["monitors"]["steady_residual"] = numbers(result.monitors.steady_residual);
  o["monitors"]["theta_increments"] = numbers(result.monitors.theta_increments);
  return o.dump(2) + "\n";
}

} // namespace gravodiff
