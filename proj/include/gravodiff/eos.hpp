#pragma once

#include <memory>
#include <string>
#include <vector>

// Equation of state P(z) in the self-similar form p(n, theta) = theta^{d/2+1} P(n theta^{-d/2}).

namespace gravodiff {

enum class EosKind { MaxwellBoltzmann, Polytropic, FermiDirac };

std::string to_string(EosKind kind);

class FdTable;

// Values needed by the time stepper and the monitors at one z.
struct EosPoint {
  double P = 0.0;
  double dP = 0.0;
  double H = 0.0; // primitive of P'(z)/z with H(1) = 0
};

class EosModel {
public:
  static EosModel maxwell_boltzmann(int d);
  static EosModel polytropic(int d, double p1);
  static EosModel fermi_dirac(int d, double mu = 1.0, double delta = 1e-3);

  EosKind kind() const noexcept { return kind_; }
  int d() const noexcept { return d_; }
  double mu() const noexcept { return mu_; }
  // Maxwell-Boltzmann has no polytropic part and reports p1 = 0.
  double p1() const noexcept { return p1_; }
  double delta() const noexcept { return delta_; }

  // Exact evaluation unless a table is attached (see tabulated()).
  double P(double z) const;
  double dP(double z) const;
  double d2P(double z) const; // always exact
  double H(double z) const;
  EosPoint point(double z) const;

  // Independent route to P' for Fermi-Dirac: f/f' with f' from the
  // differentiated-kernel quadrature instead of the order recursion.
  double diffusion_coefficient(double z) const;

  // Copy sharing a process-wide interpolation table for (d, mu); relative
  // accuracy ~1e-11 inside the lattice, exact outside. Identity for MB and polytropic.
  EosModel tabulated() const;
  bool is_tabulated() const noexcept { return table_ != nullptr; }

  // Fault injection: same P, but the reported p1 is multiplied by factor.
  EosModel tampered_p1(double factor) const;

private:
  EosModel() = default;
  void check_domain(double z) const;

  EosKind kind_ = EosKind::MaxwellBoltzmann;
  int d_ = 3;
  double mu_ = 1.0;
  double p1_ = 0.0;
  double poly_coeff_ = 0.0; // polytropic prefactor of P; tampering leaves it alone
  double delta_ = 0.0;
  double alpha_ = 0.5;      // d/2 - 1
  double curvature0_ = 0.0; // P''(0) for Fermi-Dirac
  double small_c_ = 1.0;    // (mu/2) Gamma(d/2)
  double x_at_one_ = 0.0;   // f^{-1}_{d/2-1}(2/mu)
  std::shared_ptr<const FdTable> table_;

  friend class FdTable;
};

double big_p(const EosModel& model, double z);
double big_p_prime(const EosModel& model, double z);
double pressure(const EosModel& model, double n, double theta);
double dp_dtheta(const EosModel& model, double n, double theta);
double d2p_dtheta2(const EosModel& model, double n, double theta);

struct StructuralBounds {
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double B = 0.0;
  double growth_constant_C = 0.0;
};

// Geometric samples on [lo, hi].
std::vector<double> geometric_samples(double lo, double hi, int count);

// Default audit grid: 400 geometric points on [1e-6, 1e6].
std::vector<double> default_audit_samples();

// Certifies the structural constants by sampling and checks the sandwich
// bounds, zP'' growth, monotone decay of P z^{-1-2/d} and, for Fermi-Dirac,
// P'z < (1+2/d)P. Throws StructuralViolation at the first failing sample.
StructuralBounds structural_audit(const EosModel& model, const std::vector<double>& z_samples);

} // namespace gravodiff
