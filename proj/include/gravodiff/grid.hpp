#pragma once

#include <cmath>
#include <vector>

// Radially symmetric finite-volume geometry on the ball B(0, R) in R^d.
// Cell i (0-based) spans [r_faces[i], r_faces[i+1]].

namespace gravodiff {

using Field = std::vector<double>;

class RadialGrid {
public:
  static RadialGrid uniform(int d, double R, int N);
  // Cell widths grow outward by `ratio` (ratio > 1 refines near r = 0).
  static RadialGrid geometric(int d, double R, int N, double ratio);

  int d() const noexcept { return d_; }
  double radius() const noexcept { return R_; }
  int cells() const noexcept { return static_cast<int>(centers_.size()); }
  // |S^{d-1}|
  double sigma() const noexcept { return sigma_; }
  double ball_volume() const noexcept { return sigma_ * std::pow(R_, d_) / d_; }

  const std::vector<double>& faces() const noexcept { return faces_; }
  const std::vector<double>& centers() const noexcept { return centers_; }
  const std::vector<double>& widths() const noexcept { return widths_; }
  const std::vector<double>& face_area() const noexcept { return area_; }
  const std::vector<double>& cell_volume() const noexcept { return volume_; }
  const std::vector<double>& inverse_volume() const noexcept { return inv_volume_; }
  // Distance between the centres adjacent to face i (i = 1..N-1); at i = N
  // the distance from the last centre to the boundary. Entry 0 is unused.
  const std::vector<double>& face_spacing() const noexcept { return spacing_; }

private:
  RadialGrid(int d, std::vector<double> faces);

  int d_;
  double R_;
  double sigma_;
  std::vector<double> faces_, centers_, widths_, area_, volume_, inv_volume_, spacing_;
};

void check_shape(const RadialGrid& grid, const Field& f, const char* what);

// sum_i f_i |cell_i|
double integrate(const RadialGrid& grid, const Field& f);

// sum_i a_i b_i |cell_i|
double integrate_product(const RadialGrid& grid, const Field& a, const Field& b);

// (int |f|^p)^{1/p}; throws DomainError for p < 1.
double lp_norm(const RadialGrid& grid, const Field& f, double p);

struct PoissonSolution {
  Field phi;                 // cell values
  std::vector<double> dphi;  // phi' at faces 0..N
  std::vector<double> phi_face; // phi at faces 0..N, phi_face[N] = 0
};

// Discrete radial solve of Laplace(phi) = n, phi(R) = 0.
PoissonSolution poisson_solve(const RadialGrid& grid, const Field& n);

// int |grad phi|^2 by the trapezoid rule on face values.
double gradient_energy(const RadialGrid& grid, const std::vector<double>& dphi);

// Finite-volume Laplacian with phi = 0 at r = R as a tridiagonal matrix:
// (L phi)_i = lower_i phi_{i-1} + diag_i phi_i + upper_i phi_{i+1}.
struct Tridiagonal {
  std::vector<double> lower, diag, upper;
};
Tridiagonal laplacian(const RadialGrid& grid);
Field apply(const Tridiagonal& m, const Field& x);

// Thomas algorithm; throws StepFailure on a vanishing pivot.
Field solve_tridiagonal(const Tridiagonal& m, const Field& rhs);

// Face gradients of a cell field by centre differences, with phi(R) = 0 and
// zero gradient at the origin.
std::vector<double> difference_gradient(const RadialGrid& grid, const Field& phi);

} // namespace gravodiff
