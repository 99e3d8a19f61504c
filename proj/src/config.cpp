#include "gravodiff/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "gravodiff/error.hpp"

namespace gravodiff {

using nlohmann::json;

std::string to_string(Mode mode) {
  switch (mode) {
  case Mode::Isothermal: return "isothermal";
  case Mode::Microcanonical: return "microcanonical";
  case Mode::Relaxed: return "relaxed";
  }
  return "unknown";
}

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  return j;
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(join(path, key), "unknown key");
  }
}

template <class T>
T get(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path, std::string("wrong type: ") + e.what());
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

template <class Fn>
void optional_key(const json& obj, const std::string& path, const char* key, Fn&& fn) {
  if (auto it = obj.find(key); it != obj.end()) fn(*it, join(path, key));
}

template <class Fn>
void required_key(const json& obj, const std::string& path, const char* key, Fn&& fn) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(join(path, key), "missing required field");
  fn(*it, join(path, key));
}

EosKind parse_eos_kind(const json& j, const std::string& path) {
  const auto s = get<std::string>(j, path);
  if (s == "maxwell_boltzmann") return EosKind::MaxwellBoltzmann;
  if (s == "polytropic") return EosKind::Polytropic;
  if (s == "fermi_dirac") return EosKind::FermiDirac;
  throw ConfigError(path, "unknown EOS '" + s + "' (maxwell_boltzmann, polytropic, fermi_dirac)");
}

Mode parse_mode_kind(const json& j, const std::string& path) {
  const auto s = get<std::string>(j, path);
  if (s == "isothermal") return Mode::Isothermal;
  if (s == "microcanonical") return Mode::Microcanonical;
  if (s == "relaxed") return Mode::Relaxed;
  throw ConfigError(path, "unknown mode '" + s + "' (isothermal, microcanonical, relaxed)");
}

Profile parse_profile(const json& j, const std::string& path) {
  const auto s = get<std::string>(j, path);
  if (s == "constant") return Profile::Constant;
  if (s == "gaussian") return Profile::Gaussian;
  if (s == "annulus") return Profile::Annulus;
  throw ConfigError(path, "unknown profile '" + s + "' (constant, gaussian, annulus)");
}

ThetaSchedule parse_schedule(const json& j, const std::string& path) {
  if (j.is_number()) return ThetaSchedule::constant(get_number(j, path));
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a number or a list of [t, theta] pairs");
  std::vector<double> times, values;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) throw ConfigError(p, "expected a [t, theta] pair");
    times.push_back(get_number(j[i][0], p + "[0]"));
    values.push_back(get_number(j[i][1], p + "[1]"));
  }
  try {
    return ThetaSchedule::piecewise_linear(std::move(times), std::move(values));
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

void parse_grid(const json& j, const std::string& path, GridSpec& g) {
  require_object(j, path);
  reject_unknown(j, path, {"d", "R", "N", "refinement", "ratio"});
  required_key(j, path, "d", [&](const json& v, const std::string& p) { g.d = get_int(v, p); });
  required_key(j, path, "R", [&](const json& v, const std::string& p) { g.R = get_number(v, p); });
  required_key(j, path, "N", [&](const json& v, const std::string& p) { g.N = get_int(v, p); });
  optional_key(j, path, "refinement", [&](const json& v, const std::string& p) {
    const auto s = get<std::string>(v, p);
    if (s == "uniform") g.refinement = Refinement::Uniform;
    else if (s == "geometric") g.refinement = Refinement::Geometric;
    else throw ConfigError(p, "unknown refinement '" + s + "' (uniform, geometric)");
  });
  optional_key(j, path, "ratio", [&](const json& v, const std::string& p) { g.ratio = get_number(v, p); });
}

void parse_eos(const json& j, const std::string& path, EosSpec& e) {
  require_object(j, path);
  reject_unknown(j, path, {"kind", "mu", "delta", "p1", "tabulate"});
  required_key(j, path, "kind", [&](const json& v, const std::string& p) { e.kind = parse_eos_kind(v, p); });
  optional_key(j, path, "mu", [&](const json& v, const std::string& p) { e.mu = get_number(v, p); });
  optional_key(j, path, "delta", [&](const json& v, const std::string& p) { e.delta = get_number(v, p); });
  optional_key(j, path, "p1", [&](const json& v, const std::string& p) { e.p1 = get_number(v, p); });
  optional_key(j, path, "tabulate", [&](const json& v, const std::string& p) { e.tabulate = get<bool>(v, p); });
}

void parse_mode(const json& j, const std::string& path, ModeSpec& m) {
  require_object(j, path);
  reject_unknown(j, path, {"kind", "theta", "bracket", "E_target", "theta0", "tol", "k"});
  required_key(j, path, "kind", [&](const json& v, const std::string& p) { m.kind = parse_mode_kind(v, p); });
  optional_key(j, path, "theta", [&](const json& v, const std::string& p) { m.theta = parse_schedule(v, p); });
  optional_key(j, path, "bracket", [&](const json& v, const std::string& p) {
    if (!v.is_array() || v.size() != 2) throw ConfigError(p, "expected [a, b]");
    m.bracket.a = get_number(v[0], p + "[0]");
    m.bracket.b = get_number(v[1], p + "[1]");
  });
  optional_key(j, path, "E_target", [&](const json& v, const std::string& p) { m.E_target = get_number(v, p); });
  optional_key(j, path, "theta0", [&](const json& v, const std::string& p) { m.theta0 = get_number(v, p); });
  optional_key(j, path, "tol", [&](const json& v, const std::string& p) { m.tol = get_number(v, p); });
  optional_key(j, path, "k", [&](const json& v, const std::string& p) { m.relaxation.k = get_number(v, p); });
}

void parse_initial(const json& j, const std::string& path, InitialSpec& s) {
  require_object(j, path);
  reject_unknown(j, path, {"profile", "amplitude", "width", "center", "mass"});
  optional_key(j, path, "profile", [&](const json& v, const std::string& p) { s.profile = parse_profile(v, p); });
  optional_key(j, path, "amplitude", [&](const json& v, const std::string& p) { s.amplitude = get_number(v, p); });
  optional_key(j, path, "width", [&](const json& v, const std::string& p) { s.width = get_number(v, p); });
  optional_key(j, path, "center", [&](const json& v, const std::string& p) { s.center = get_number(v, p); });
  optional_key(j, path, "mass", [&](const json& v, const std::string& p) { s.mass = get_number(v, p); });
}

void parse_time(const json& j, const std::string& path, TimeControl& t) {
  require_object(j, path);
  reject_unknown(j, path, {"cfl_safety", "dt_max", "t_end", "max_steps", "blowup_threshold"});
  optional_key(j, path, "cfl_safety", [&](const json& v, const std::string& p) { t.cfl_safety = get_number(v, p); });
  optional_key(j, path, "dt_max", [&](const json& v, const std::string& p) { t.dt_max = get_number(v, p); });
  required_key(j, path, "t_end", [&](const json& v, const std::string& p) { t.t_end = get_number(v, p); });
  optional_key(j, path, "max_steps", [&](const json& v, const std::string& p) {
    if (!v.is_number_integer()) throw ConfigError(p, "expected an integer");
    t.max_steps = v.get<long>();
  });
  optional_key(j, path, "blowup_threshold",
               [&](const json& v, const std::string& p) { t.blowup_threshold = get_number(v, p); });
}

void parse_output(const json& j, const std::string& path, OutputSpec& o) {
  require_object(j, path);
  reject_unknown(j, path, {"cadence_steps", "path", "snapshot"});
  optional_key(j, path, "cadence_steps", [&](const json& v, const std::string& p) { o.cadence_steps = get_int(v, p); });
  optional_key(j, path, "path", [&](const json& v, const std::string& p) { o.path = get<std::string>(v, p); });
  optional_key(j, path, "snapshot", [&](const json& v, const std::string& p) { o.snapshot = get<std::string>(v, p); });
}

void parse_constants(const json& j, const std::string& path, ConstantsSpec& c) {
  require_object(j, path);
  reject_unknown(j, path,
                 {"epsilon", "C_energy", "B_window", "ratio_ceiling", "C_refined", "C_refined_certified",
                  "relax_d2_positivity"});
  optional_key(j, path, "epsilon", [&](const json& v, const std::string& p) { c.epsilon = get_number(v, p); });
  optional_key(j, path, "C_energy", [&](const json& v, const std::string& p) { c.C_energy = get_number(v, p); });
  optional_key(j, path, "B_window", [&](const json& v, const std::string& p) { c.B_window = get_number(v, p); });
  optional_key(j, path, "ratio_ceiling", [&](const json& v, const std::string& p) { c.ratio_ceiling = get_number(v, p); });
  optional_key(j, path, "C_refined", [&](const json& v, const std::string& p) { c.C_refined = get_number(v, p); });
  optional_key(j, path, "C_refined_certified",
               [&](const json& v, const std::string& p) { c.C_refined_certified = get<bool>(v, p); });
  optional_key(j, path, "relax_d2_positivity",
               [&](const json& v, const std::string& p) { c.relax_d2_positivity = get<bool>(v, p); });
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
}

RunConfig from_json(const json& j) {
  require_object(j, "");
  reject_unknown(j, "", {"grid", "eos", "mode", "initial", "time", "output", "constants"});
  RunConfig c;
  required_key(j, "", "grid", [&](const json& v, const std::string& p) { parse_grid(v, p, c.grid); });
  required_key(j, "", "eos", [&](const json& v, const std::string& p) { parse_eos(v, p, c.eos); });
  required_key(j, "", "mode", [&](const json& v, const std::string& p) { parse_mode(v, p, c.mode); });
  optional_key(j, "", "initial", [&](const json& v, const std::string& p) { parse_initial(v, p, c.initial); });
  required_key(j, "", "time", [&](const json& v, const std::string& p) { parse_time(v, p, c.time); });
  optional_key(j, "", "output", [&](const json& v, const std::string& p) { parse_output(v, p, c.output); });
  optional_key(j, "", "constants", [&](const json& v, const std::string& p) { parse_constants(v, p, c.constants); });
  validate(c);
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

void validate(const RunConfig& c) {
  if (c.grid.d < 2 || c.grid.d > 4) throw ConfigError("grid.d", "dimension must be 2, 3 or 4");
  if (!(c.grid.R > 0.0)) throw ConfigError("grid.R", "radius must be positive");
  if (c.grid.N < 8) throw ConfigError("grid.N", "need at least 8 cells");
  if (c.grid.refinement == Refinement::Geometric && !(c.grid.ratio > 0.0))
    throw ConfigError("grid.ratio", "geometric ratio must be positive");
  if (!(c.eos.mu > 0.0)) throw ConfigError("eos.mu", "mu must be positive");
  if (!(c.eos.delta > 0.0)) throw ConfigError("eos.delta", "delta must be positive");
  if (c.eos.p1 && c.eos.kind != EosKind::Polytropic) throw ConfigError("eos.p1", "only the polytropic EOS takes p1");
  if (c.eos.p1 && !(*c.eos.p1 > 0.0)) throw ConfigError("eos.p1", "p1 must be positive");
  if (c.mode.kind == Mode::Microcanonical && c.eos.kind == EosKind::Polytropic)
    throw ConfigError("mode.kind", "degenerate EOS: microcanonical mode needs dp/dtheta > 0, but the polytropic "
                                   "pressure has P'z = (1+2/d)P and dp/dtheta = 0");
  try {
    c.mode.bracket.validate();
  } catch (const DomainError& e) {
    throw ConfigError("mode.bracket", e.what());
  }
  if (!(c.mode.tol > 0.0) || c.mode.tol > 1e-3) throw ConfigError("mode.tol", "tol must lie in (0, 1e-3]");
  if (!(c.mode.theta0 >= c.mode.bracket.a && c.mode.theta0 <= c.mode.bracket.b))
    throw ConfigError("mode.theta0", "theta0 must lie inside the bracket");
  if (!(c.mode.relaxation.k > 0.0)) throw ConfigError("mode.k", "k must be positive");
  if (!(c.initial.amplitude >= 0.0)) throw ConfigError("initial.amplitude", "amplitude must be >= 0");
  if (!(c.initial.width > 0.0)) throw ConfigError("initial.width", "width must be positive");
  if (c.initial.mass && !(*c.initial.mass >= 0.0)) throw ConfigError("initial.mass", "mass must be >= 0");
  try {
    c.time.validate();
  } catch (const DomainError& e) {
    throw ConfigError("time", e.what());
  }
  if (c.output.cadence_steps < 1) throw ConfigError("output.cadence_steps", "cadence must be at least 1");
  if (!(c.constants.ratio_ceiling > 0.0)) throw ConfigError("constants.ratio_ceiling", "ceiling must be positive");
}

RunConfig parse_config(const std::string& text) { return from_json(parse_document(text)); }

RunConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

RadialGrid build_grid(const RunConfig& c) {
  if (c.grid.refinement == Refinement::Geometric) return RadialGrid::geometric(c.grid.d, c.grid.R, c.grid.N, c.grid.ratio);
  return RadialGrid::uniform(c.grid.d, c.grid.R, c.grid.N);
}

EosModel build_eos(const RunConfig& c) {
  const int d = c.grid.d;
  switch (c.eos.kind) {
  case EosKind::MaxwellBoltzmann: return EosModel::maxwell_boltzmann(d);
  case EosKind::Polytropic: {
    const double p1 = c.eos.p1.value_or(2.0 / (d + 2.0) * std::pow(d / c.eos.mu, 2.0 / d));
    return EosModel::polytropic(d, p1);
  }
  case EosKind::FermiDirac: {
    EosModel m = EosModel::fermi_dirac(d, c.eos.mu, c.eos.delta);
    return c.eos.tabulate ? m.tabulated() : m;
  }
  }
  throw ConfigError("eos.kind", "unsupported EOS");
}

Field initial_density(const RunConfig& c, const RadialGrid& grid) {
  const auto& r = grid.centers();
  const InitialSpec& s = c.initial;
  Field n(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    switch (s.profile) {
    case Profile::Constant: n[i] = s.amplitude; break;
    case Profile::Gaussian: n[i] = s.amplitude * std::exp(-(r[i] * r[i]) / (s.width * s.width)); break;
    case Profile::Annulus: {
      const double x = (r[i] - s.center) / s.width;
      n[i] = s.amplitude * std::exp(-x * x);
      break;
    }
    }
  }
  if (s.mass) {
    const double m = integrate(grid, n);
    if (*s.mass == 0.0) {
      n.assign(n.size(), 0.0);
    } else {
      if (!(m > 0.0)) throw ConfigError("initial.mass", "cannot normalize a profile with zero mass");
      const double scale = *s.mass / m;
      for (double& v : n) v *= scale;
    }
  }
  return n;
}

SweepPlan parse_sweep_plan(const std::string& text) {
  const json j = parse_document(text);
  require_object(j, "");
  reject_unknown(j, "", {"base", "axes", "parallelism"});
  SweepPlan plan;
  required_key(j, "", "base", [&](const json& v, const std::string& p) {
    require_object(v, p);
    plan.base = v.dump();
  });
  required_key(j, "", "axes", [&](const json& v, const std::string& p) {
    if (!v.is_array() || v.empty()) throw ConfigError(p, "axes must be a non-empty list");
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string ap = p + "[" + std::to_string(i) + "]";
      require_object(v[i], ap);
      reject_unknown(v[i], ap, {"path", "values"});
      SweepAxis axis;
      required_key(v[i], ap, "path", [&](const json& x, const std::string& xp) { axis.path = get<std::string>(x, xp); });
      required_key(v[i], ap, "values", [&](const json& x, const std::string& xp) {
        if (!x.is_array() || x.empty()) throw ConfigError(xp, "value list must be non-empty");
        for (const auto& e : x) axis.values.push_back(e.dump());
      });
      if (axis.path.empty()) throw ConfigError(ap + ".path", "empty parameter path");
      plan.axes.push_back(std::move(axis));
    }
  });
  optional_key(j, "", "parallelism", [&](const json& v, const std::string& p) {
    plan.parallelism = get_int(v, p);
    if (plan.parallelism < 0) throw ConfigError(p, "parallelism must be >= 0");
  });
  // Every point must be a valid run document.
  for (const auto& point : expand_sweep(plan)) parse_config(point.document);
  return plan;
}

std::vector<SweepPoint> expand_sweep(const SweepPlan& plan) {
  std::vector<SweepPoint> out;
  if (plan.axes.empty()) return out;
  const json base = json::parse(plan.base);
  std::vector<std::size_t> index(plan.axes.size(), 0);
  while (true) {
    json doc = base;
    SweepPoint point;
    for (std::size_t a = 0; a < plan.axes.size(); ++a) {
      json* node = &doc;
      std::string rest = plan.axes[a].path;
      for (std::size_t dot; (dot = rest.find('.')) != std::string::npos; rest = rest.substr(dot + 1)) {
        if (!node->is_object()) throw ConfigError(plan.axes[a].path, "path crosses a non-object value");
        node = &(*node)[rest.substr(0, dot)];
        if (node->is_null()) *node = json::object(); // missing sections are created
      }
      if (!node->is_object()) throw ConfigError(plan.axes[a].path, "path crosses a non-object value");
      point.parameters.emplace_back(plan.axes[a].path, plan.axes[a].values[index[a]]);
      try {
        (*node)[rest] = json::parse(plan.axes[a].values[index[a]]);
      } catch (const json::exception& e) {
        throw ConfigError(plan.axes[a].path, std::string("cannot set sweep value: ") + e.what());
      }
    }
    point.document = doc.dump();
    out.push_back(std::move(point));
    std::size_t a = plan.axes.size();
    while (a > 0) {
      --a;
      if (++index[a] < plan.axes[a].values.size()) break;
      index[a] = 0;
      if (a == 0) return out;
    }
  }
}

} // namespace gravodiff
