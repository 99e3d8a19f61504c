#include "gravodiff/fermi.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "gravodiff/error.hpp"
#include "gravodiff/quadrature.hpp"

namespace gravodiff {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// eta(2k) = (1 - 2^{1-2k}) zeta(2k), k = 0..kEtaTerms-1 (entry 0 unused).
constexpr int kEtaTerms = 64;

const std::array<double, kEtaTerms>& eta_even() {
  static const std::array<double, kEtaTerms> table = [] {
    std::array<double, kEtaTerms> t{};
    for (int k = 1; k < kEtaTerms; ++k) {
      double zeta = 0.0;
      if (k == 1) {
        zeta = kPi * kPi / 6.0;
      } else if (k == 2) {
        zeta = std::pow(kPi, 4) / 90.0;
      } else {
        // tail beyond n = 4000 is below 4000^{1-2k} < 1e-18 for k >= 3
        for (int n = 4000; n >= 1; --n) zeta += std::pow(static_cast<double>(n), -2.0 * k);
      }
      t[static_cast<std::size_t>(k)] = (1.0 - std::pow(2.0, 1.0 - 2.0 * k)) * zeta;
    }
    return t;
  }();
  return table;
}

// e (e-1) ... (e-m+1)
double falling(double e, int m) {
  double r = 1.0;
  for (int j = 0; j < m; ++j) r *= e - j;
  return r;
}

std::string describe(double alpha, double z) {
  std::ostringstream os;
  os.precision(17);
  os << "alpha=" << alpha << ", z=" << z;
  return os.str();
}

// m-th z-derivative of 1/(1+e^{x-z}) for x >= 0, optionally scaled by e^{-z}
// (used for z <= 0 so that deep negative z does not underflow).
struct Kernel {
  double z;
  int m;
  bool scaled;

  double operator()(double x) const {
    if (scaled) {
      const double ex = std::exp(-x);
      const double e = std::exp(z - x); // <= 1
      const double q = 1.0 / (1.0 + e);
      switch (m) {
      case 0: return ex * q;
      case 1: return ex * q * q;
      default: return ex * (1.0 - e) * q * q * q;
      }
    }
    const double u = x - z;
    double k, l; // k = 1/(1+e^u), l = 1 - k
    if (u > 0) {
      const double e = std::exp(-u);
      k = e / (1.0 + e);
      l = 1.0 / (1.0 + e);
    } else {
      const double e = std::exp(u);
      k = 1.0 / (1.0 + e);
      l = e / (1.0 + e);
    }
    switch (m) {
    case 0: return k;
    case 1: return k * l;
    default: return k * l * (l - k);
    }
  }
};

} // namespace

FermiOrder::FermiOrder(double alpha) : alpha_(alpha) {
  if (!std::isfinite(alpha) || !(alpha > -1.0))
    throw DomainError("Fermi order must satisfy alpha > -1, got " + describe(alpha, 0.0));
}

void FermiEvalConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-6))
    throw DomainError("FermiEvalConfig.rel_tol must lie in (0, 1e-6]");
  if (!(switch_z >= 20.0)) throw DomainError("FermiEvalConfig.switch_z must be >= 20");
  if (max_subdivisions < 1) throw DomainError("FermiEvalConfig.max_subdivisions must be >= 1");
}

namespace fermi_detail {

double quadrature(double alpha, double z, int m, const FermiEvalConfig& cfg) {
  const bool scaled = z <= 0.0;
  const Kernel kernel{z, m, scaled};
  const double split = std::max(z, 1.0);

  // [0, split] with x = split * w^p, which absorbs the x^alpha endpoint factor.
  const double p = alpha >= -0.5 ? 2.0 : 1.0 / (alpha + 1.0);
  const double wexp = p * (alpha + 1.0) - 1.0;
  const double scale = std::pow(split, alpha + 1.0) * p;
  auto head = [&](double w) {
    const double x = split * std::pow(w, p);
    return scale * std::pow(w, wexp) * kernel(x);
  };
  auto fail = [&](const char* what) { return EvaluationFailure(alpha, z, what); };

  // m = 2 changes sign at x = z: accuracy is relative to the integral of |g|
  double abs_tol = 0.0;
  if (m == 2) abs_tol = cfg.rel_tol * quad::kronrod15(head, 0.0, 1.0).abs_value;
  auto h = quad::integrate(head, 0.0, 1.0, cfg.rel_tol, abs_tol, cfg.max_subdivisions);
  if (!h.converged) throw fail("no convergence on [0, max(z,1)]");
  double total = h.value;
  double abs_total = h.abs_value;

  auto tail = [&](double x) { return std::pow(x, alpha) * kernel(x); };
  const double shift = scaled ? 0.0 : z;
  double a = split;
  double len = 1.0;
  for (int seg = 0; seg < 64; ++seg) {
    const double b = a + len;
    auto t = quad::integrate(tail, a, b, cfg.rel_tol, abs_tol, cfg.max_subdivisions);
    if (!t.converged) throw fail("no convergence on tail segment");
    total += t.value;
    abs_total += t.abs_value;
    // integrand magnitude beyond b is bounded by x^alpha e^{-(x - shift)}
    double bound = std::pow(b, alpha) * std::exp(-(b - shift));
    if (alpha > 0.0) {
      if (b <= 2.0 * alpha) {
        a = b;
        len *= 2.0;
        continue;
      }
      bound /= 1.0 - alpha / b;
    }
    if (bound <= 1e-3 * cfg.rel_tol * std::abs(total) || bound <= kEps * 1e-3 * abs_total) break;
    a = b;
    len *= 2.0;
  }
  return scaled ? total * std::exp(z) : total;
}

double polylog_series(double alpha, double z, int m) {
  double sum = 0.0;
  const double base = std::exp(z);
  double power = 1.0;
  for (int k = 1; k < 100000; ++k) {
    power *= base;
    const double kk = static_cast<double>(k);
    const double term = std::pow(kk, m - alpha - 1.0) * power;
    sum += (k % 2 == 1) ? term : -term;
    if (term <= 1e-18 * std::abs(sum) || power == 0.0) break;
  }
  return std::tgamma(alpha + 1.0) * sum;
}

double asymptotic(double alpha, double z, int m) {
  const auto& eta = eta_even();
  double sum = falling(alpha + 1.0, m) / (alpha + 1.0) * std::pow(z, alpha + 1.0 - m);
  double coeff = 1.0; // alpha (alpha-1) ... (alpha-2k+2)
  double previous = std::abs(sum);
  for (int k = 1; k < kEtaTerms; ++k) {
    coeff *= (k == 1) ? alpha : (alpha - (2 * k - 3)) * (alpha - (2 * k - 2));
    if (coeff == 0.0) break; // integer order: the series terminates
    const double e = alpha + 1.0 - 2.0 * k;
    const double term = 2.0 * eta[static_cast<std::size_t>(k)] * coeff * falling(e, m) *
                        std::pow(z, e - m);
    if (term == 0.0) continue;
    if (std::abs(term) > previous) break; // past the smallest term
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    previous = std::abs(term);
  }
  const double reflection = std::cos(kPi * alpha);
  if (std::abs(reflection) > 1e-15) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    sum += reflection * sign * polylog_series(alpha, -z, m);
  }
  return sum;
}

} // namespace fermi_detail

double fermi_kernel_derivative(FermiOrder order, double z, int m, const FermiEvalConfig& cfg) {
  cfg.validate();
  if (m < 0 || m > 2) throw UnsupportedOrder("kernel derivative order must be 0, 1 or 2");
  if (!std::isfinite(z)) throw DomainError("Fermi integral argument must be finite");
  if (z > cfg.switch_z) return fermi_detail::asymptotic(order.alpha(), z, m);
  return fermi_detail::quadrature(order.alpha(), z, m, cfg);
}

double fermi_integral(FermiOrder order, double z, const FermiEvalConfig& cfg) {
  return fermi_kernel_derivative(order, z, 0, cfg);
}

double fermi_derivative(FermiOrder order, double z, const FermiEvalConfig& cfg) {
  const double alpha = order.alpha();
  if (alpha == 0.0) {
    if (!std::isfinite(z)) throw DomainError("Fermi integral argument must be finite");
    return z > 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
  }
  if (alpha < 0.0)
    throw UnsupportedOrder("derivative recursion needs alpha >= 0, got alpha=" +
                           std::to_string(alpha));
  return alpha * fermi_integral(FermiOrder(alpha - 1.0), z, cfg);
}

double fermi_inverse(FermiOrder order, double y, const FermiEvalConfig& cfg) {
  cfg.validate();
  if (!(y > 0.0) || !std::isfinite(y))
    throw DomainError("fermi_inverse needs a finite y > 0");
  const double alpha = order.alpha();
  auto f = [&](double z) { return fermi_integral(order, z, cfg); };

  // f ~ Gamma(alpha+1) e^z for z -> -inf, ~ z^{alpha+1}/(alpha+1) for z -> inf
  const double guess = y < 1.0 ? std::log(y / std::tgamma(alpha + 1.0))
                               : std::pow((alpha + 1.0) * y, 1.0 / (alpha + 1.0));
  // Below z = -40 the first correction e^z / 2^{alpha+1} is under machine
  // epsilon, and bisection loses precision once y is subnormal.
  if (guess < -40.0) return guess;
  double step = 1.0 + 0.05 * std::abs(guess);
  double lo = guess - step;
  double hi = guess + step;
  int expansions = 0;
  constexpr int kMaxExpansions = 200;
  double step_lo = step;
  while (f(lo) > y) {
    hi = lo;
    lo -= step_lo;
    step_lo *= 2.0;
    if (++expansions > kMaxExpansions || !std::isfinite(lo))
      throw OutOfRange("fermi_inverse: lower bracket expansion failed for y=" + describe(alpha, y));
  }
  double step_hi = step;
  while (f(hi) < y) {
    lo = hi;
    hi += step_hi;
    step_hi *= 2.0;
    if (++expansions > kMaxExpansions || !std::isfinite(hi))
      throw OutOfRange("fermi_inverse: upper bracket expansion failed for y=" + describe(alpha, y));
  }

  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  double z = 0.5 * (lo + hi);
  double fz = f(z);

  auto slope = [&](double x) {
    return alpha >= 0.0 ? fermi_derivative(order, x, cfg) : fermi_kernel_derivative(order, x, 1, cfg);
  };
  for (int polish = 0; polish < 2; ++polish) {
    const double d = slope(z);
    if (!(d > 0.0)) break;
    const double candidate = z - (fz - y) / d;
    if (!(candidate >= lo && candidate <= hi)) break;
    const double fc = f(candidate);
    if (std::abs(fc - y) > std::abs(fz - y)) break;
    z = candidate;
    fz = fc;
  }

  const double allowed = std::max(cfg.rel_tol * y, 8.0 * kEps * y * (1.0 + std::abs(z)));
  if (std::abs(fz - y) > allowed)
    throw EvaluationFailure(alpha, z, "inverse residual above tolerance");
  return z;
}

double sommerfeld_limit_residual(FermiOrder order, double z, const FermiEvalConfig& cfg) {
  if (!(z > 0.0)) throw DomainError("sommerfeld_limit_residual needs z > 0");
  const double alpha = order.alpha();
  const double fa = fermi_integral(order, z, cfg);
  const double fb = fermi_integral(FermiOrder(alpha + 1.0), z, cfg);
  return std::pow(z, -alpha) * (fa * z - (alpha + 2.0) / (alpha + 1.0) * fb);
}

} // namespace gravodiff
