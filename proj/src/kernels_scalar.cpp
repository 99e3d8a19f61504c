#include <algorithm>

#include "gravodiff/kernels.hpp"

namespace gravodiff::kernels {

namespace {

void face_flux(std::size_t count, const double* diff, const double* drift, const double* left,
               const double* right, const double* inv_h, double* flux) {
  for (std::size_t f = 0; f < count; ++f) {
    const double upwind = drift[f] > 0.0 ? right[f] : left[f];
    flux[f] = diff[f] * (right[f] - left[f]) * inv_h[f] + upwind * drift[f];
  }
}

void apply_divergence(std::size_t cells, double dt, const double* inv_volume, const double* area,
                      const double* flux, double* n) {
  for (std::size_t i = 0; i < cells; ++i)
    n[i] += (dt * inv_volume[i]) * (area[i + 1] * flux[i + 1] - area[i] * flux[i]);
}

double max_outflow_rate(std::size_t cells, const double* inv_volume, const double* area,
                        const double* diff, const double* drift, const double* inv_h) {
  double rate = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double out_right = area[i + 1] * (diff[i + 1] * inv_h[i + 1] + std::max(-drift[i + 1], 0.0));
    const double out_left = area[i] * (diff[i] * inv_h[i] + std::max(drift[i], 0.0));
    rate = std::max(rate, (out_right + out_left) * inv_volume[i]);
  }
  return rate;
}

double weighted_sum(std::size_t count, const double* w, const double* f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) sum += w[i] * f[i];
  return sum;
}

double weighted_dot(std::size_t count, const double* w, const double* a, const double* b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) sum += w[i] * a[i] * b[i];
  return sum;
}

} // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", face_flux, apply_divergence, max_outflow_rate, weighted_sum,
                                 weighted_dot};
  return table;
}

} // namespace gravodiff::kernels
