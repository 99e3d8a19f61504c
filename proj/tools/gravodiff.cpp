#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gravodiff/config.hpp"
#include "gravodiff/error.hpp"
#include "gravodiff/fermi.hpp"
#include "gravodiff/output.hpp"
#include "gravodiff/run.hpp"
#include "gravodiff/sweep.hpp"
#include "gravodiff/verify.hpp"

using namespace gravodiff;

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open file");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cmd_run(const std::string& config_path, std::string csv_path, std::string snapshot_path) {
  RunConfig cfg = load_config(config_path);
  if (csv_path.empty()) csv_path = cfg.output.path;
  if (snapshot_path.empty()) snapshot_path = cfg.output.snapshot;
  if (snapshot_path.empty() && !csv_path.empty()) snapshot_path = csv_path + ".final.json";

  const RunResult result = run(cfg);

  if (csv_path.empty()) {
    write_csv(std::cout, result.records);
  } else {
    std::ofstream out(csv_path, std::ios::binary);
    write_csv(out, result.records);
    if (!out) {
      std::cerr << "gravodiff: cannot write " << csv_path << "\n";
      return 1;
    }
  }
  if (!snapshot_path.empty()) {
    std::ofstream out(snapshot_path, std::ios::binary);
    out << snapshot_json(cfg, result);
    if (!out) {
      std::cerr << "gravodiff: cannot write " << snapshot_path << "\n";
      return 1;
    }
  }
  std::cerr << "outcome: " << to_string(result.outcome) << " after " << result.monitors.steps << " steps, t = "
            << format_double(result.final_state.t);
  if (!result.message.empty()) std::cerr << " (" << result.message << ")";
  std::cerr << "\n";
  return exit_code(result.outcome);
}

int cmd_sweep(const std::string& plan_path, const std::string& out_path) {
  const SweepPlan plan = parse_sweep_plan(read_text(plan_path));
  if (out_path.empty()) {
    run_sweep(plan, std::cout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::app);
  if (!out) {
    std::cerr << "gravodiff: cannot open " << out_path << "\n";
    return 1;
  }
  run_sweep(plan, out);
  return out ? 0 : 1;
}

int cmd_verify(const std::vector<int>& only, double tamper) {
  VerifyOptions opt;
  opt.only = only;
  opt.tamper_p1 = tamper;
  bool all = true;
  for (const auto& r : run_verification(opt)) {
    std::cout << format_result(r) << std::endl;
    all = all && r.pass;
  }
  return all ? 0 : 1;
}

int cmd_fermi_eval(double alpha, double z, int derivative, bool inverse) {
  const FermiOrder order(alpha);
  double v;
  if (inverse) v = fermi_inverse(order, z);
  else if (derivative == 0) v = fermi_integral(order, z);
  else v = fermi_kernel_derivative(order, z, derivative);
  std::cout << format_double(v) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"gravodiff: gravitational drift-diffusion with a Fermi-Dirac equation of state"};
  app.require_subcommand(1);

  std::string config_path, csv_path, snapshot_path;
  auto* run_cmd = app.add_subcommand("run", "integrate one scenario; exit 0/2/3/4 by outcome");
  run_cmd->add_option("config", config_path, "JSON run document")->required();
  run_cmd->add_option("--csv", csv_path, "trajectory CSV (overrides output.path; default stdout)");
  run_cmd->add_option("--snapshot", snapshot_path, "final-state JSON (default <csv>.final.json)");

  std::string plan_path, sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "run the cross product of a sweep plan, one JSON line per point");
  sweep_cmd->add_option("plan", plan_path, "JSON sweep plan")->required();
  sweep_cmd->add_option("--out", sweep_out, "append results to this file instead of stdout");

  std::vector<int> only;
  double tamper = 1.0;
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
  verify_cmd->add_option("--only", only, "criterion ids to run")->delimiter(',');
  verify_cmd->add_option("--tamper-p1", tamper, "multiply the reported p1 (fault injection)");

  double alpha = 0.0, z = 0.0;
  int derivative = 0;
  bool inverse = false;
  auto* fermi_cmd = app.add_subcommand("fermi-eval", "evaluate f_alpha(z)");
  fermi_cmd->add_option("alpha", alpha)->required();
  fermi_cmd->add_option("z", z, "argument, or the value y with --inverse")->required();
  fermi_cmd->add_option("--derivative", derivative, "z-derivative order 0, 1 or 2")->check(CLI::Range(0, 2));
  fermi_cmd->add_flag("--inverse", inverse, "solve f_alpha(x) = z for x");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return cmd_run(config_path, csv_path, snapshot_path);
    if (*sweep_cmd) return cmd_sweep(plan_path, sweep_out);
    if (*verify_cmd) return cmd_verify(only, tamper);
    if (*fermi_cmd) return cmd_fermi_eval(alpha, z, derivative, inverse);
  } catch (const std::exception& e) {
    std::cerr << "gravodiff: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
