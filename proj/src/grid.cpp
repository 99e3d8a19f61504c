#include "gravodiff/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gravodiff/error.hpp"
#include "gravodiff/kernels.hpp"

namespace gravodiff {

RadialGrid::RadialGrid(int d, std::vector<double> faces)
    : d_(d), R_(faces.back()), faces_(std::move(faces)) {
  sigma_ = 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
  const std::size_t n = faces_.size() - 1;
  centers_.resize(n);
  widths_.resize(n);
  volume_.resize(n);
  inv_volume_.resize(n);
  area_.resize(n + 1);
  spacing_.assign(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) area_[i] = sigma_ * std::pow(faces_[i], d - 1);
  area_[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    centers_[i] = 0.5 * (faces_[i] + faces_[i + 1]);
    widths_[i] = faces_[i + 1] - faces_[i];
    volume_[i] = sigma_ * (std::pow(faces_[i + 1], d) - std::pow(faces_[i], d)) / d;
    inv_volume_[i] = 1.0 / volume_[i];
  }
  for (std::size_t i = 1; i < n; ++i) spacing_[i] = centers_[i] - centers_[i - 1];
  spacing_[n] = R_ - centers_[n - 1];
}

namespace {

void check_geometry(int d, double R, int N) {
  if (d < 2 || d > 4) throw DomainError("grid dimension must be 2, 3 or 4");
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("grid radius must be positive");
  if (N < 8) throw DomainError("grid needs at least 8 cells, got " + std::to_string(N));
}

} // namespace

RadialGrid RadialGrid::uniform(int d, double R, int N) {
  check_geometry(d, R, N);
  std::vector<double> f(static_cast<std::size_t>(N) + 1);
  for (int i = 0; i <= N; ++i) f[static_cast<std::size_t>(i)] = R * i / N;
  f.back() = R;
  return RadialGrid(d, std::move(f));
}

RadialGrid RadialGrid::geometric(int d, double R, int N, double ratio) {
  check_geometry(d, R, N);
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw DomainError("geometric ratio must be positive");
  if (ratio == 1.0) return uniform(d, R, N);
  std::vector<double> f(static_cast<std::size_t>(N) + 1, 0.0);
  const double first = R * (1.0 - ratio) / (1.0 - std::pow(ratio, N));
  double w = first;
  for (int i = 1; i <= N; ++i) {
    f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i) - 1] + w;
    w *= ratio;
  }
  f.back() = R;
  return RadialGrid(d, std::move(f));
}

void check_shape(const RadialGrid& grid, const Field& f, const char* what) {
  if (f.size() != static_cast<std::size_t>(grid.cells()))
    throw ShapeMismatch(std::string(what) + ": field has " + std::to_string(f.size()) +
                        " values, grid has " + std::to_string(grid.cells()) + " cells");
}

double integrate(const RadialGrid& grid, const Field& f) {
  check_shape(grid, f, "integrate");
  return kernels::active().weighted_sum(f.size(), grid.cell_volume().data(), f.data());
}

double integrate_product(const RadialGrid& grid, const Field& a, const Field& b) {
  check_shape(grid, a, "integrate_product");
  check_shape(grid, b, "integrate_product");
  return kernels::active().weighted_dot(a.size(), grid.cell_volume().data(), a.data(), b.data());
}

double lp_norm(const RadialGrid& grid, const Field& f, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm needs p >= 1");
  check_shape(grid, f, "lp_norm");
  if (p == 2.0) return std::sqrt(integrate_product(grid, f, f));
  Field g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = std::pow(std::abs(f[i]), p);
  return std::pow(integrate(grid, g), 1.0 / p);
}

PoissonSolution poisson_solve(const RadialGrid& grid, const Field& n) {
  check_shape(grid, n, "poisson_solve");
  const std::size_t N = n.size();
  const int d = grid.d();
  const auto& r = grid.faces();
  const auto& c = grid.centers();
  const auto& w = grid.widths();
  PoissonSolution s;
  s.dphi.assign(N + 1, 0.0);
  s.phi_face.assign(N + 1, 0.0);
  s.phi.assign(N, 0.0);
  // r^{d-1} phi'(r) = int_0^r n s^{d-1} ds, midpoint rule per cell
  double enclosed = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    enclosed += n[i] * std::pow(c[i], d - 1) * w[i];
    s.dphi[i + 1] = enclosed * std::pow(r[i + 1], 1 - d);
  }
  for (std::size_t k = N; k > 0; --k)
    s.phi_face[k - 1] = s.phi_face[k] - 0.5 * (s.dphi[k - 1] + s.dphi[k]) * w[k - 1];
  for (std::size_t i = 0; i < N; ++i) s.phi[i] = 0.5 * (s.phi_face[i] + s.phi_face[i + 1]);
  return s;
}

double gradient_energy(const RadialGrid& grid, const std::vector<double>& dphi) {
  const std::size_t N = static_cast<std::size_t>(grid.cells());
  if (dphi.size() != N + 1) throw ShapeMismatch("gradient_energy: need one value per face");
  const auto& a = grid.face_area();
  const auto& w = grid.widths();
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    sum += 0.5 * w[i] * (a[i] * dphi[i] * dphi[i] + a[i + 1] * dphi[i + 1] * dphi[i + 1]);
  return sum;
}

Tridiagonal laplacian(const RadialGrid& grid) {
  const std::size_t N = static_cast<std::size_t>(grid.cells());
  const auto& a = grid.face_area();
  const auto& h = grid.face_spacing();
  const auto& iv = grid.inverse_volume();
  Tridiagonal m;
  m.lower.assign(N, 0.0);
  m.diag.assign(N, 0.0);
  m.upper.assign(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    // right face i+1; at i = N-1 it carries the Dirichlet value 0
    const double right = a[i + 1] / h[i + 1] * iv[i];
    m.diag[i] -= right;
    if (i + 1 < N) m.upper[i] = right;
    if (i > 0) {
      const double left = a[i] / h[i] * iv[i];
      m.diag[i] -= left;
      m.lower[i] = left;
    }
  }
  return m;
}

Field apply(const Tridiagonal& m, const Field& x) {
  const std::size_t N = x.size();
  Field y(N);
  for (std::size_t i = 0; i < N; ++i) {
    double v = m.diag[i] * x[i];
    if (i > 0) v += m.lower[i] * x[i - 1];
    if (i + 1 < N) v += m.upper[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

Field solve_tridiagonal(const Tridiagonal& m, const Field& rhs) {
  const std::size_t N = rhs.size();
  std::vector<double> cp(N), dp(N);
  double pivot = m.diag[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) throw StepFailure("tridiagonal solve: zero pivot at row 0");
  cp[0] = m.upper[0] / pivot;
  dp[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < N; ++i) {
    pivot = m.diag[i] - m.lower[i] * cp[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot))
      throw StepFailure("tridiagonal solve: zero pivot at row " + std::to_string(i));
    cp[i] = m.upper[i] / pivot;
    dp[i] = (rhs[i] - m.lower[i] * dp[i - 1]) / pivot;
  }
  Field x(N);
  x[N - 1] = dp[N - 1];
  for (std::size_t i = N - 1; i > 0; --i) x[i - 1] = dp[i - 1] - cp[i - 1] * x[i];
  return x;
}

std::vector<double> difference_gradient(const RadialGrid& grid, const Field& phi) {
  check_shape(grid, phi, "difference_gradient");
  const std::size_t N = phi.size();
  const auto& h = grid.face_spacing();
  std::vector<double> g(N + 1, 0.0);
  for (std::size_t i = 1; i < N; ++i) g[i] = (phi[i] - phi[i - 1]) / h[i];
  g[N] = -phi[N - 1] / h[N];
  return g;
}

} // namespace gravodiff
