#include "gravodiff/eos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <utility>

#include "gravodiff/error.hpp"
#include "gravodiff/fermi.hpp"

namespace gravodiff {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_dimension(int d) {
  if (d < 2 || d > 4) throw DomainError("dimension must be 2, 3 or 4, got " + std::to_string(d));
}

// Fermi data at the x that solves z = (mu/2) f_alpha(x).
struct FdData {
  double f0, f1, f2, fb; // f_alpha, f'_alpha, f''_alpha, f_{alpha+1}
};

FdData fd_data(double alpha, double x, bool with_second) {
  const FermiOrder order(alpha);
  FdData r{};
  r.f0 = fermi_integral(order, x);
  r.f1 = fermi_derivative(order, x);
  r.f2 = with_second ? fermi_kernel_derivative(order, x, 2) : 0.0;
  r.fb = fermi_integral(FermiOrder(alpha + 1.0), x);
  return r;
}

} // namespace

std::string to_string(EosKind kind) {
  switch (kind) {
  case EosKind::MaxwellBoltzmann: return "maxwell_boltzmann";
  case EosKind::Polytropic: return "polytropic";
  case EosKind::FermiDirac: return "fermi_dirac";
  }
  return "unknown";
}

// Cubic Hermite table on a uniform lattice in u = ln z, carrying exact
// u-derivatives: x' = P', (ln P)' = zP'/P, (ln P')' = zP''/P'.
class FdTable {
public:
  explicit FdTable(const EosModel& m);
  bool eval(double z, EosPoint& out) const;

private:
  static constexpr double kStep = 1.0 / 128.0;
  double mu_, alpha_, small_c_, x_one_;
  double z_lo_, z_hi_, u_lo_;
  std::size_t count_ = 0;
  std::vector<double> x_, dx_, lp_, dlp_, lq_, dlq_;
};

FdTable::FdTable(const EosModel& m)
    : mu_(m.mu_), alpha_(m.alpha_), small_c_(m.small_c_), x_one_(m.x_at_one_) {
  z_lo_ = 1e-8 * std::min(1.0, small_c_);
  z_hi_ = 1e10;
  u_lo_ = std::log(z_lo_);
  count_ = static_cast<std::size_t>(std::ceil((std::log(z_hi_) - u_lo_) / kStep)) + 1;
  z_hi_ = std::exp(u_lo_ + kStep * static_cast<double>(count_ - 1));
  for (auto* v : {&x_, &dx_, &lp_, &dlp_, &lq_, &dlq_}) v->resize(count_);

  const FermiOrder order(alpha_);
  double x = 0.0;
  for (std::size_t j = 0; j < count_; ++j) {
    const double u = u_lo_ + kStep * static_cast<double>(j);
    const double z = std::exp(u);
    const double y = 2.0 * z / mu_;
    if (j == 0) {
      x = fermi_inverse(order, y);
    } else {
      x += kStep * dx_[j - 1];
      for (int it = 0; it < 12; ++it) {
        const double step = (fermi_integral(order, x) - y) / fermi_derivative(order, x);
        x -= step;
        if (std::abs(step) <= 4.0 * kEps * std::max(1.0, std::abs(x))) break;
      }
    }
    const FdData f = fd_data(alpha_, x, true);
    const double d = 2.0 * (alpha_ + 1.0);
    const double p = mu_ / d * f.fb;
    const double dp = f.f0 / f.f1;
    const double d2p = (1.0 - f.f0 * f.f2 / (f.f1 * f.f1)) / (0.5 * mu_ * f.f1);
    x_[j] = x;
    dx_[j] = dp;
    lp_[j] = std::log(p);
    dlp_[j] = z * dp / p;
    lq_[j] = std::log(dp);
    dlq_[j] = z * d2p / dp;
  }
}

bool FdTable::eval(double z, EosPoint& out) const {
  if (z < z_lo_) {
    if (!(z > 0.0)) return false;
    // Maxwell-Boltzmann end of the series, O((z/c)^2) accurate
    const double s = z / small_c_;
    const double k = std::exp2(-alpha_ - 1.0);
    out.P = z + 0.5 * k * z * s;
    out.dP = 1.0 + k * s;
    out.H = std::log(s) + k * s - x_one_;
    return true;
  }
  if (z > z_hi_) return false;
  const double s = (std::log(z) - u_lo_) / kStep;
  std::size_t j = static_cast<std::size_t>(s);
  if (j > count_ - 2) j = count_ - 2;
  const double t = s - static_cast<double>(j);
  const double t2 = t * t;
  const double omt = 1.0 - t;
  const double h00 = (1.0 + 2.0 * t) * omt * omt;
  const double h10 = t * omt * omt * kStep;
  const double h01 = t2 * (3.0 - 2.0 * t);
  const double h11 = t2 * (t - 1.0) * kStep;
  auto interp = [&](const std::vector<double>& v, const std::vector<double>& dv) {
    return h00 * v[j] + h10 * dv[j] + h01 * v[j + 1] + h11 * dv[j + 1];
  };
  out.H = interp(x_, dx_) - x_one_;
  out.P = std::exp(interp(lp_, dlp_));
  out.dP = std::exp(interp(lq_, dlq_));
  return true;
}

namespace {

std::shared_ptr<const FdTable> shared_table(const EosModel& m) {
  static std::mutex guard;
  static std::map<std::pair<int, double>, std::shared_ptr<const FdTable>> cache;
  const std::lock_guard<std::mutex> lock(guard);
  auto& slot = cache[{m.d(), m.mu()}];
  if (!slot) slot = std::make_shared<const FdTable>(m);
  return slot;
}

} // namespace

EosModel EosModel::maxwell_boltzmann(int d) {
  check_dimension(d);
  EosModel m;
  m.kind_ = EosKind::MaxwellBoltzmann;
  m.d_ = d;
  m.delta_ = 1e-3;
  m.alpha_ = 0.5 * d - 1.0;
  return m;
}

EosModel EosModel::polytropic(int d, double p1) {
  check_dimension(d);
  if (!(p1 > 0.0) || !std::isfinite(p1)) throw DomainError("polytropic p1 must be positive");
  EosModel m;
  m.kind_ = EosKind::Polytropic;
  m.d_ = d;
  m.p1_ = p1;
  m.poly_coeff_ = p1;
  m.delta_ = 1e-3;
  m.alpha_ = 0.5 * d - 1.0;
  return m;
}

EosModel EosModel::fermi_dirac(int d, double mu, double delta) {
  check_dimension(d);
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw DomainError("delta must be nonnegative");
  EosModel m;
  m.kind_ = EosKind::FermiDirac;
  m.d_ = d;
  m.mu_ = mu;
  m.delta_ = delta;
  m.alpha_ = 0.5 * d - 1.0;
  m.p1_ = 2.0 / (d + 2.0) * std::pow(d / mu, 2.0 / d);
  m.small_c_ = 0.5 * mu * std::tgamma(m.alpha_ + 1.0);
  m.curvature0_ = std::exp2(-m.alpha_ - 1.0) / m.small_c_;
  m.x_at_one_ = fermi_inverse(FermiOrder(m.alpha_), 2.0 / mu);
  return m;
}

EosModel EosModel::tabulated() const {
  EosModel copy = *this;
  if (kind_ == EosKind::FermiDirac && !table_) copy.table_ = shared_table(*this);
  return copy;
}

EosModel EosModel::tampered_p1(double factor) const {
  EosModel copy = *this;
  copy.p1_ *= factor;
  return copy;
}

void EosModel::check_domain(double z) const {
  if (!(z >= -delta_) || std::isnan(z))
    throw DomainError("z = " + std::to_string(z) + " below the EOS domain [-delta, inf)");
}

double EosModel::P(double z) const { return point(z).P; }

double EosModel::dP(double z) const { return point(z).dP; }

double EosModel::H(double z) const { return point(z).H; }

EosPoint EosModel::point(double z) const {
  check_domain(z);
  const double e = 2.0 / d_;
  EosPoint r;
  switch (kind_) {
  case EosKind::MaxwellBoltzmann:
    r.P = z;
    r.dP = 1.0;
    r.H = z > 0.0 ? std::log(z) : -std::numeric_limits<double>::infinity();
    return r;
  case EosKind::Polytropic:
    if (z <= 0.0) {
      r.H = -poly_coeff_ * (0.5 * d_ + 1.0);
      return r;
    }
    r.P = poly_coeff_ * std::pow(z, 1.0 + e);
    r.dP = poly_coeff_ * (1.0 + e) * std::pow(z, e);
    r.H = poly_coeff_ * (0.5 * d_ + 1.0) * (std::pow(z, e) - 1.0);
    return r;
  case EosKind::FermiDirac:
    break;
  }
  if (z <= 0.0) {
    r.P = z + 0.5 * curvature0_ * z * z;
    r.dP = 1.0 + curvature0_ * z;
    r.H = -std::numeric_limits<double>::infinity();
    return r;
  }
  if (table_ && table_->eval(z, r)) return r;
  const double x = fermi_inverse(FermiOrder(alpha_), 2.0 * z / mu_);
  const FdData f = fd_data(alpha_, x, false);
  r.P = mu_ / d_ * f.fb;
  r.dP = f.f0 / f.f1;
  r.H = x - x_at_one_;
  return r;
}

double EosModel::d2P(double z) const {
  check_domain(z);
  const double e = 2.0 / d_;
  switch (kind_) {
  case EosKind::MaxwellBoltzmann: return 0.0;
  case EosKind::Polytropic:
    if (z <= 0.0) return d_ == 2 && z == 0.0 ? poly_coeff_ * (1.0 + e) * e : 0.0;
    return poly_coeff_ * (1.0 + e) * e * std::pow(z, e - 1.0);
  case EosKind::FermiDirac: break;
  }
  if (z <= 0.0) return curvature0_;
  const double x = fermi_inverse(FermiOrder(alpha_), 2.0 * z / mu_);
  const FdData f = fd_data(alpha_, x, true);
  return (1.0 - f.f0 * f.f2 / (f.f1 * f.f1)) / (0.5 * mu_ * f.f1);
}

double EosModel::diffusion_coefficient(double z) const {
  if (kind_ != EosKind::FermiDirac) return dP(z);
  check_domain(z);
  if (z <= 0.0) return 1.0 + curvature0_ * z;
  const FermiOrder order(alpha_);
  const double x = fermi_inverse(order, 2.0 * z / mu_);
  return fermi_integral(order, x) / fermi_kernel_derivative(order, x, 1);
}

double big_p(const EosModel& model, double z) { return model.P(z); }

double big_p_prime(const EosModel& model, double z) { return model.dP(z); }

namespace {

void check_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw DomainError("temperature must be positive and finite");
}

} // namespace

double pressure(const EosModel& model, double n, double theta) {
  check_theta(theta);
  const double half_d = 0.5 * model.d();
  return std::pow(theta, half_d + 1.0) * model.P(n * std::pow(theta, -half_d));
}

double dp_dtheta(const EosModel& model, double n, double theta) {
  check_theta(theta);
  const int d = model.d();
  const double half_d = 0.5 * d;
  const double z = n * std::pow(theta, -half_d);
  switch (model.kind()) {
  case EosKind::MaxwellBoltzmann: model.P(z); return n;
  case EosKind::Polytropic: model.P(z); return 0.0;
  case EosKind::FermiDirac: break;
  }
  const EosPoint p = model.point(z);
  return -half_d * std::pow(theta, half_d) * (p.dP * z - (1.0 + 2.0 / d) * p.P);
}

double d2p_dtheta2(const EosModel& model, double n, double theta) {
  check_theta(theta);
  const int d = model.d();
  const double half_d = 0.5 * d;
  const double z = n * std::pow(theta, -half_d);
  if (model.kind() != EosKind::FermiDirac) {
    model.P(z);
    return 0.0;
  }
  const double k = 1.0 + 2.0 / d;
  const EosPoint p = model.point(z);
  const double d2 = model.d2P(z);
  return half_d * half_d * std::pow(theta, half_d - 1.0) * (d2 * z * z - k * p.dP * z + k * p.P);
}

std::vector<double> geometric_samples(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw DomainError("invalid geometric sample range");
  std::vector<double> z(static_cast<std::size_t>(count));
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) z[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
  z.back() = hi;
  return z;
}

std::vector<double> default_audit_samples() { return geometric_samples(1e-6, 1e6, 400); }

StructuralBounds structural_audit(const EosModel& model, const std::vector<double>& z_samples) {
  if (z_samples.empty()) throw DomainError("structural_audit needs samples");
  const int d = model.d();
  const double e = 2.0 / d;
  const double k = 1.0 + e;
  const double p1 = model.p1();
  constexpr double slack = 1e-12;

  struct Sample {
    double z, P, dP, d2P;
  };
  std::vector<Sample> s;
  s.reserve(z_samples.size());
  for (double z : z_samples) {
    if (!(z > 0.0)) throw DomainError("structural_audit samples must be positive");
    const EosPoint p = model.point(z);
    s.push_back({z, p.P, p.dP, model.d2P(z)});
  }

  StructuralBounds b;
  b.p1 = p1;
  // P' is nondecreasing, so its infimum on [0, inf) is P'(0)
  b.p0 = model.dP(0.0);
  for (const auto& q : s) {
    const double ze = std::pow(q.z, e);
    b.p0 = std::min(b.p0, q.dP);
    b.p2 = std::max({b.p2, q.dP / (1.0 + ze), q.P / (1.0 + q.z * ze)});
    b.p3 = std::max(b.p3, q.z * q.d2P / (1.0 + ze));
    const double remainder_slope = q.dP - p1 * k * ze;
    b.B = std::max(b.B, std::abs(remainder_slope) * std::pow(q.z, 0.5 - 1.0 / d));
  }
  // the polytropic law is degenerate at 0 (p0 = 0); the others must have p0 > 0
  if (model.kind() != EosKind::Polytropic && !(b.p0 > 0.0))
    throw StructuralViolation("P' >= p0 > 0", 0.0, "p0 not positive");

  double previous_ratio = std::numeric_limits<double>::infinity();
  for (const auto& q : s) {
    const double ze = std::pow(q.z, e);
    auto fail = [&](const char* which, double lhs, double rhs) {
      return StructuralViolation(which, q.z,
                                 "lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs));
    };
    if (q.dP < p1 * ze * (1.0 - slack)) throw fail("P' >= p1 z^{2/d}", q.dP, p1 * ze);
    if (q.P < b.p0 * q.z * (1.0 - slack)) throw fail("P >= p0 z", q.P, b.p0 * q.z);
    if (q.P < p1 * q.z * ze * (1.0 - slack)) throw fail("P >= p1 z^{1+2/d}", q.P, p1 * q.z * ze);
    if (q.dP > b.p2 * (1.0 + ze) * (1.0 + slack)) throw fail("P' <= p2 (1 + z^{2/d})", q.dP, b.p2 * (1.0 + ze));
    if (q.P > b.p2 * (1.0 + q.z * ze) * (1.0 + slack)) throw fail("P <= p2 (1 + z^{1+2/d})", q.P, b.p2 * (1.0 + q.z * ze));
    if (q.z * q.d2P > b.p3 * (1.0 + ze) * (1.0 + slack)) throw fail("z P'' <= p3 (1 + z^{2/d})", q.z * q.d2P, b.p3 * (1.0 + ze));
    const double ratio = q.P / (q.z * ze);
    if (ratio > previous_ratio * (1.0 + 4.0 * kEps))
      throw fail("P z^{-1-2/d} nonincreasing", ratio, previous_ratio);
    previous_ratio = ratio;
    if (model.kind() == EosKind::FermiDirac && !(q.dP * q.z < k * q.P))
      throw fail("P' z < (1+2/d) P", q.dP * q.z, k * q.P);
  }
  b.growth_constant_C = p1 > 0.0 ? d * b.B * b.B / (4.0 * (d + 2.0) * p1)
                                 : std::numeric_limits<double>::infinity();
  return b;
}

} // namespace gravodiff
