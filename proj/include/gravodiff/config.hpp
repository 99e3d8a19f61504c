#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gravodiff/eos.hpp"
#include "gravodiff/evolve.hpp"
#include "gravodiff/grid.hpp"
#include "gravodiff/microcanonical.hpp"

// Scenario description read from a JSON document. Every key is optional
// except where noted in parse_config; unknown keys are rejected.

namespace gravodiff {

enum class Refinement { Uniform, Geometric };
enum class Mode { Isothermal, Microcanonical, Relaxed };
enum class Profile { Constant, Gaussian, Annulus };

std::string to_string(Mode mode);

struct GridSpec {
  int d = 3;
  double R = 1.0;
  int N = 100;
  Refinement refinement = Refinement::Uniform;
  double ratio = 1.0;
};

struct EosSpec {
  EosKind kind = EosKind::MaxwellBoltzmann;
  double mu = 1.0;
  double delta = 1e-3;
  std::optional<double> p1; // polytropic only; defaults to the Fermi-Dirac limit (2/(d+2)) (d/mu)^{2/d}
  bool tabulate = true;     // Fermi-Dirac only
};

struct ModeSpec {
  Mode kind = Mode::Isothermal;
  ThetaSchedule theta = ThetaSchedule::constant(1.0);
  TemperatureBracket bracket;
  // Fixed energy: E_target, or the energy of the initial density at theta0.
  std::optional<double> E_target;
  double theta0 = 1.0;
  double tol = 1e-10;
  RelaxationParams relaxation;
};

struct InitialSpec {
  Profile profile = Profile::Gaussian;
  double amplitude = 1.0;
  double width = 0.2;
  double center = 0.5; // annulus radius
  std::optional<double> mass;
};

struct OutputSpec {
  int cadence_steps = 10;
  std::string path;     // trajectory CSV; empty: none
  std::string snapshot; // final-state JSON; empty: none
};

struct ConstantsSpec {
  double epsilon = 0.0; // 0: p1 d / 4
  double C_energy = 1.0;
  double B_window = 1.0;
  double ratio_ceiling = 1e3;
  double C_refined = 1.0;         // additive constant of the d = 3 potential bound
  bool C_refined_certified = false;
  bool relax_d2_positivity = false;
};

struct RunConfig {
  GridSpec grid;
  EosSpec eos;
  ModeSpec mode;
  InitialSpec initial;
  TimeControl time;
  OutputSpec output;
  ConstantsSpec constants;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Invariants shared by parsing and programmatic construction.
void validate(const RunConfig& config);

RadialGrid build_grid(const RunConfig& config);
EosModel build_eos(const RunConfig& config);
// Initial density, rescaled to initial.mass when set.
Field initial_density(const RunConfig& config, const RadialGrid& grid);

struct SweepAxis {
  std::string path; // dotted key path into the run document, e.g. "initial.mass"
  std::vector<std::string> values; // JSON-encoded values
};

struct SweepPlan {
  std::string base; // JSON-encoded run document
  std::vector<SweepAxis> axes;
  int parallelism = 0; // 0: GRAVODIFF_THREADS or available parallelism
};

SweepPlan parse_sweep_plan(const std::string& text);

struct SweepPoint {
  std::string document; // JSON run document
  std::vector<std::pair<std::string, std::string>> parameters; // (path, JSON value)
};

// One run per point of the cross product, first axis slowest.
std::vector<SweepPoint> expand_sweep(const SweepPlan& plan);

} // namespace gravodiff
