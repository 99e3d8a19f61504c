#include "gravodiff/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "gravodiff/error.hpp"
#include "gravodiff/fermi.hpp"
#include "gravodiff/output.hpp"
#include "gravodiff/run.hpp"

namespace gravodiff {

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      pass = false;
      detail << what;
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

RunConfig scenario(EosKind eos, Mode mode, double mass, double t_end, long max_steps) {
  RunConfig c;
  c.grid.d = 3;
  c.grid.R = 1.0;
  c.grid.N = 200;
  c.eos.kind = eos;
  c.mode.kind = mode;
  c.initial.profile = Profile::Gaussian;
  c.initial.width = 0.2;
  c.initial.mass = mass;
  c.time.t_end = t_end;
  c.time.max_steps = max_steps;
  c.output.cadence_steps = 10;
  return c;
}

using Check = std::function<void(Verdict&, const VerifyOptions&)>;

struct Criterion {
  const char* name;
  double limit;
  Check check;
};

void fermi_closed_form(Verdict& o, const VerifyOptions&) {
  const FermiOrder order(0.0);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double z = -10.0 + 40.0 * i / 199.0;
    const double exact = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    const double f = fermi_integral(order, z);
    worst = std::max(worst, std::fabs(f - exact) / std::max(1.0, f));
  }
  o.require(worst <= 1e-10, "max scaled error " + sci(worst));
  if (o.pass) o.detail << "max scaled error " << sci(worst);
}

void derivative_recursion(Verdict& o, const VerifyOptions&) {
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    const FermiOrder order(alpha);
    for (int i = 0; i < 50; ++i) {
      const double z = -5.0 + 25.0 * i / 49.0;
      const double h = 1e-4 * std::max(1.0, std::fabs(z));
      const double fd = (fermi_integral(order, z + h) - fermi_integral(order, z - h)) / (2.0 * h);
      const double rec = fermi_derivative(order, z);
      worst = std::max(worst, std::fabs(rec - fd) / std::fabs(fd));
    }
  }
  o.require(worst <= 1e-6, "max relative deviation " + sci(worst));
  if (o.pass) o.detail << "max relative deviation " << sci(worst);
}

void sommerfeld_limit(Verdict& o, const VerifyOptions&) {
  const double target = -std::numbers::pi * std::numbers::pi / 3.0;
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double r = sommerfeld_limit_residual(FermiOrder(alpha), 200.0);
    worst = std::max(worst, std::fabs(r / target - 1.0));
  }
  o.require(worst <= 0.02, "max relative gap " + sci(worst));
  if (o.pass) o.detail << "max relative gap to -pi^2/3 " << sci(worst);
}

void pressure_asymptotics(Verdict& o, const VerifyOptions&) {
  double hi_worst = 0.0, lo_worst = 0.0;
  for (int d : {2, 3, 4}) {
    const EosModel m = EosModel::fermi_dirac(d, 1.0);
    const double z = 1e6;
    const double ratio = m.dP(z) / (2.0 / d * std::pow(d * z, 2.0 / d));
    hi_worst = std::max(hi_worst, std::fabs(ratio - 1.0));
    o.require(ratio >= 0.99 && ratio <= 1.01, "d=" + std::to_string(d) + " large-z ratio " + sci(ratio));
    const double small = m.dP(1e-6);
    lo_worst = std::max(lo_worst, std::fabs(small - 1.0));
    o.require(std::fabs(small - 1.0) <= 1e-3, "d=" + std::to_string(d) + " P'(1e-6) = " + sci(small));
  }
  if (o.pass) o.detail << "|ratio-1| " << sci(hi_worst) << ", |P'(1e-6)-1| " << sci(lo_worst);
}

void diffusion_identity(Verdict& o, const VerifyOptions&) {
  const EosModel m = EosModel::fermi_dirac(3, 1.0);
  double worst = 0.0;
  for (double z : geometric_samples(1e-4, 1e4, 100))
    worst = std::max(worst, std::fabs(m.diffusion_coefficient(z) - m.dP(z)) / m.dP(z));
  o.require(worst <= 1e-8, "max relative gap " + sci(worst));
  if (o.pass) o.detail << "max relative gap " << sci(worst);
}

void structural_audit_check(Verdict& o, const VerifyOptions& opt) {
  for (int d : {2, 3, 4}) {
    EosModel m = EosModel::fermi_dirac(d, 1.0);
    if (opt.tamper_p1 != 1.0) m = m.tampered_p1(opt.tamper_p1);
    const double expected = 2.0 / (d + 2.0) * std::pow(static_cast<double>(d), 2.0 / d);
    o.require(std::fabs(m.p1() - expected) <= 1e-10 * expected,
              "d=" + std::to_string(d) + " p1 " + sci(m.p1()) + " vs " + sci(expected));
    try {
      const StructuralBounds b = structural_audit(m, default_audit_samples());
      o.require(b.p0 > 0.0 && std::isfinite(b.growth_constant_C) && b.growth_constant_C > 0.0,
                "d=" + std::to_string(d) + " degenerate constants");
      if (o.pass) o.detail << "d=" << d << " B=" << sci(b.B) << " C=" << sci(b.growth_constant_C) << " ";
    } catch (const StructuralViolation& e) {
      o.require(false, "d=" + std::to_string(d) + " " + e.what());
    }
  }
}

double poisson_error(int d, int N) {
  const RadialGrid g = RadialGrid::uniform(d, 1.0, N);
  // n = 2d gives phi = r^2 - 1
  const PoissonSolution s = poisson_solve(g, Field(static_cast<std::size_t>(N), 2.0 * d));
  double err = 0.0;
  for (std::size_t i = 0; i < s.phi.size(); ++i) {
    const double r = g.centers()[i];
    err = std::max(err, std::fabs(s.phi[i] - (r * r - 1.0)));
  }
  return err;
}

void poisson_oracle(Verdict& o, const VerifyOptions&) {
  for (int d : {2, 3}) {
    const double e200 = poisson_error(d, 200);
    const double ratio = poisson_error(d, 100) / e200;
    o.require(e200 <= 1e-3, "d=" + std::to_string(d) + " error " + sci(e200));
    o.require(ratio >= 3.2 && ratio <= 4.8, "d=" + std::to_string(d) + " ratio " + sci(ratio));
    if (o.pass) o.detail << "d=" << d << " err " << sci(e200) << " ratio " << sci(ratio) << " ";
  }
}

RunResult run_scenario(const RunConfig& cfg, const VerifyOptions& opt) {
  RunOptions ro;
  ro.tamper_p1 = opt.tamper_p1;
  return run(cfg, ro);
}

void mass_conservation(Verdict& o, const VerifyOptions& opt) {
  for (Mode mode : {Mode::Isothermal, Mode::Microcanonical, Mode::Relaxed}) {
    const RunResult r = run_scenario(scenario(EosKind::FermiDirac, mode, 1e-2, 1e3, 10000), opt);
    const auto& m = r.monitors;
    o.require(r.outcome == Outcome::Completed, to_string(mode) + " " + to_string(r.outcome));
    o.require(m.steps == 10000, to_string(mode) + " only " + std::to_string(m.steps) + " steps");
    o.require(m.mass_drift_max <= 1e-12, to_string(mode) + " drift " + sci(m.mass_drift_max));
    if (o.pass) o.detail << to_string(mode) << " " << sci(m.mass_drift_max) << " ";
  }
}

void lyapunov(Verdict& o, const VerifyOptions& opt) {
  for (EosKind eos : {EosKind::MaxwellBoltzmann, EosKind::FermiDirac}) {
    const RunResult r = run_scenario(scenario(eos, Mode::Isothermal, 1e-2, 0.05, 100000), opt);
    const auto& m = r.monitors;
    const std::string tag = to_string(eos);
    o.require(r.outcome == Outcome::Completed, tag + " " + to_string(r.outcome));
    o.require(m.steps >= 1000, tag + " only " + std::to_string(m.steps) + " steps");
    o.require(m.lyapunov_monitored && m.lyapunov_violations == 0,
              tag + " " + std::to_string(m.lyapunov_violations) + " W increases");
    if (o.pass) o.detail << tag << " " << m.steps << " steps, " << r.records.size() << " records ";
  }
}

void polytropic_dissipation(Verdict& o, const VerifyOptions& opt) {
  const RunResult r = run_scenario(scenario(EosKind::Polytropic, Mode::Isothermal, 1e-2, 1.0, 100000), opt);
  const auto& m = r.monitors;
  o.require(r.outcome == Outcome::Completed, to_string(r.outcome));
  o.require(m.steps >= 1000, "only " + std::to_string(m.steps) + " steps");
  o.require(m.energy_monitored && m.energy_violations == 0, std::to_string(m.energy_violations) + " E increases");
  if (o.pass)
    o.detail << m.steps << " steps, E " << sci(r.records.front().E) << " -> " << sci(r.records.back().E);
}

void growth_inequality(Verdict& o, const VerifyOptions& opt) {
  for (Mode mode : {Mode::Isothermal, Mode::Relaxed}) {
    const RunResult r = run_scenario(scenario(EosKind::FermiDirac, mode, 1e-2, 1e3, 10000), opt);
    const auto& m = r.monitors;
    const std::string tag = mode == Mode::Relaxed ? "relaxed(V)" : "elliptic(E^a)";
    o.require(m.audit_failure.empty(), tag + " audit: " + m.audit_failure);
    o.require(r.outcome == Outcome::Completed && m.steps == 10000, tag + " run did not complete 10^4 steps");
    o.require(std::isfinite(m.growth_constant_C) && m.growth_constant_C > 0.0, tag + " no finite growth constant");
    o.require(m.growth_violations == 0, tag + " " + std::to_string(m.growth_violations) + " violations");
    if (o.pass) o.detail << tag << " C=" << sci(m.growth_constant_C) << " max residual " << sci(m.growth_residual_max) << " ";
  }
}

Field random_profile(std::mt19937_64& rng, const RadialGrid& g, double mass) {
  std::uniform_real_distribution<double> width(0.1, 0.6), center(0.0, 0.6);
  const double w = width(rng), c = center(rng);
  Field n(static_cast<std::size_t>(g.cells()));
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = (g.centers()[i] - c) / w;
    n[i] = std::exp(-x * x);
  }
  const double scale = mass / integrate(g, n);
  for (double& v : n) v *= scale;
  return n;
}

void microcanonical_constraint(Verdict& o, const VerifyOptions& opt) {
  RunConfig cfg = scenario(EosKind::FermiDirac, Mode::Microcanonical, 1e-2, 1e3, 5000);
  const RunResult r = run_scenario(cfg, opt);
  const auto& m = r.monitors;
  o.require(r.outcome == Outcome::Completed, to_string(r.outcome) + " " + r.message);
  o.require(m.energy_error_max <= 1e-6, "energy error " + sci(m.energy_error_max));
  o.require(m.theta_min >= cfg.mode.bracket.a && m.theta_max <= cfg.mode.bracket.b, "theta left the bracket");
  o.require(m.dp_integral_min > 1e-10, "C_M " + sci(m.dp_integral_min));

  const RadialGrid g = RadialGrid::uniform(3, 1.0, 200);
  const EosModel model = EosModel::fermi_dirac(3, 1.0).tabulated();
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> log_mass(std::log(1e-3), std::log(1.0)), log_theta(std::log(0.1), std::log(10.0));
  const double tol = cfg.mode.tol;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Field n = random_profile(rng, g, std::exp(log_mass(rng)));
    const double theta = std::exp(log_theta(rng));
    const PoissonSolution ps = poisson_solve(g, n);
    const double E = thermal_energy(g, model, n, theta) + potential_energy(g, n, ps.phi);
    const double back = solve_temperature(g, model, n, ps.phi, E, cfg.mode.bracket, tol);
    worst = std::max(worst, std::fabs(back - theta) / theta);
  }
  o.require(worst <= 10.0 * tol, "round-trip error " + sci(worst));
  if (o.pass)
    o.detail << "energy error " << sci(m.energy_error_max) << ", C_M " << sci(m.dp_integral_min) << ", round-trip "
             << sci(worst);
}

void closed_form_temperature(Verdict& o, const VerifyOptions&) {
  const RadialGrid g = RadialGrid::uniform(3, 1.0, 200);
  const EosModel model = EosModel::maxwell_boltzmann(3);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> log_mass(std::log(1e-3), std::log(10.0)), log_theta(std::log(0.01), std::log(100.0));
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double M = std::exp(log_mass(rng));
    const Field n = random_profile(rng, g, M);
    const PoissonSolution ps = poisson_solve(g, n);
    const double U = potential_energy(g, n, ps.phi);
    const double mass = integrate(g, n);
    const double E = U + 1.5 * mass * std::exp(log_theta(rng));
    const double expected = (E - U) / (1.5 * mass);
    const double theta = solve_temperature(g, model, n, ps.phi, E, {}, 1e-13);
    worst = std::max(worst, std::fabs(theta - expected) / expected);
  }
  o.require(worst <= 1e-12, "max relative error " + sci(worst));
  if (o.pass) o.detail << "max relative error " << sci(worst);
}

void elliptic_limit(Verdict& o, const VerifyOptions& opt) {
  const double t_end = 0.01;
  RunConfig base = scenario(EosKind::MaxwellBoltzmann, Mode::Isothermal, 0.1, t_end, 1000000);
  const RunResult ell = run_scenario(base, opt);
  const RadialGrid g = build_grid(base);
  double prev = std::numeric_limits<double>::infinity();
  for (double k : {1e2, 1e3, 1e4}) {
    RunConfig cfg = base;
    cfg.mode.kind = Mode::Relaxed;
    cfg.mode.relaxation.k = k;
    const RunResult rel = run_scenario(cfg, opt);
    o.require(rel.outcome == Outcome::Completed && rel.final_state.t == t_end, "relaxed run k=" + sci(k) + " incomplete");
    Field diff(rel.final_state.phi.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = rel.final_state.phi[i] - ell.final_state.phi[i];
    const double gap = lp_norm(g, diff, 2.0);
    o.require(gap < prev, "gap not decreasing at k=" + sci(k));
    o.detail << "k=" << sci(k) << ": " << sci(gap) << " ";
    prev = gap;
  }
}

void determinism(Verdict& o, const VerifyOptions& opt) {
  const RunConfig cfg = scenario(EosKind::FermiDirac, Mode::Isothermal, 1e-2, 1e3, 3000);
  std::string first;
  for (int rep = 0; rep < 2; ++rep) {
    std::ostringstream csv;
    write_csv(csv, run_scenario(cfg, opt).records);
    if (rep == 0) first = csv.str();
    else o.require(csv.str() == first, "CSV differs between repeated runs");
  }
  if (o.pass) o.detail << first.size() << " bytes identical";
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {"fermi-closed-form", 1, fermi_closed_form},
      {"derivative-recursion", 5, derivative_recursion},
      {"sommerfeld-limit", 2, sommerfeld_limit},
      {"pressure-asymptotics", 2, pressure_asymptotics},
      {"diffusion-identity", 2, diffusion_identity},
      {"structural-audit", 5, structural_audit_check},
      {"poisson-oracle", 2, poisson_oracle},
      {"mass-conservation", 90, mass_conservation},
      {"lyapunov", 60, lyapunov},
      {"polytropic-dissipation", 30, polytropic_dissipation},
      {"growth-inequality", 60, growth_inequality},
      {"microcanonical-constraint", 60, microcanonical_constraint},
      {"closed-form-temperature", 2, closed_form_temperature},
      {"elliptic-limit", 90, elliptic_limit},
      {"determinism", 60, determinism},
  };
  return list;
}

} // namespace

int criterion_count() { return static_cast<int>(criteria().size()); }

std::string criterion_name(int id) {
  if (id < 1 || id > criterion_count()) throw DomainError("no criterion " + std::to_string(id));
  return criteria()[static_cast<std::size_t>(id - 1)].name;
}

std::vector<CriterionResult> run_verification(const VerifyOptions& options) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count(); ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end())
      continue;
    const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
    Verdict o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.check(o, options);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    CriterionResult r;
    r.id = id;
    r.name = c.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.limit_seconds = c.limit;
    o.require(r.seconds <= c.limit, "runtime " + sci(r.seconds) + " s over the " + sci(c.limit) + " s budget");
    r.pass = o.pass;
    r.detail = o.detail.str();
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s %2d %-26s %7.2f s  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
  return head + r.detail;
}

} // namespace gravodiff
