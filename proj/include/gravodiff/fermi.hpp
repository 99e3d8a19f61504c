#pragma once

// Complete Fermi-Dirac integrals
//
//   f_alpha(z) = int_0^inf x^alpha / (1 + exp(x - z)) dx,   alpha > -1,
//
// their z-derivatives, inverse in z, and the Sommerfeld-limit combination.
// Evaluation is by adaptive Gauss-Kronrod quadrature for z <= switch_z and
// by the Sommerfeld asymptotic series above it.

namespace gravodiff {

class FermiOrder {
public:
  // Throws DomainError unless alpha > -1 and finite.
  explicit FermiOrder(double alpha);
  double alpha() const noexcept { return alpha_; }

private:
  double alpha_;
};

struct FermiEvalConfig {
  double rel_tol = 1e-13;
  double switch_z = 40.0;
  int max_subdivisions = 400;

  // Throws DomainError unless rel_tol in (0, 1e-6] and switch_z >= 20.
  void validate() const;
};

double fermi_integral(FermiOrder order, double z, const FermiEvalConfig& cfg = {});

// z such that fermi_integral(order, z) = y; y > 0.
double fermi_inverse(FermiOrder order, double y, const FermiEvalConfig& cfg = {});

// f'_alpha = alpha f_{alpha-1}; alpha = 0 uses the closed form e^z/(1+e^z).
// Throws UnsupportedOrder for alpha < 0.
double fermi_derivative(FermiOrder order, double z, const FermiEvalConfig& cfg = {});

// z^{-alpha} (z f_alpha(z) - (alpha+2)/(alpha+1) f_{alpha+1}(z)); tends to -pi^2/3.
double sommerfeld_limit_residual(FermiOrder order, double z, const FermiEvalConfig& cfg = {});

// m-th z-derivative (m = 0, 1, 2) for any alpha > -1, obtained by integrating
// the differentiated kernel; no recursion in alpha is involved.
double fermi_kernel_derivative(FermiOrder order, double z, int m, const FermiEvalConfig& cfg = {});

namespace fermi_detail {

// Quadrature branch only, regardless of z.
double quadrature(double alpha, double z, int m, const FermiEvalConfig& cfg);

// Sommerfeld series branch only (meaningful for large z).
double asymptotic(double alpha, double z, int m);

// Gamma(alpha+1) sum_k (-1)^{k+1} k^m e^{kz} / k^{alpha+1}; converges for z < 0.
double polylog_series(double alpha, double z, int m);

} // namespace fermi_detail

} // namespace gravodiff
