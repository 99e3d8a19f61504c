#pragma once

#include <cstddef>

// Data-parallel inner loops of the stepper and the monitors. Every kernel has
// a scalar reference; the AVX2 variants are picked at runtime when the CPU
// supports them (GRAVODIFF_SIMD=scalar forces the reference path).
//
// Elementwise kernels are bit-identical across variants. Sums are reordered
// by the vector variants and agree to rounding only.

namespace gravodiff::kernels {

struct KernelTable {
  const char* name;

  // flux[f] = diff[f] * (right[f] - left[f]) * inv_h[f]
  //         + (drift[f] > 0 ? right[f] : left[f]) * drift[f]
  void (*face_flux)(std::size_t count, const double* diff, const double* drift, const double* left,
                    const double* right, const double* inv_h, double* flux);

  // n[i] += (dt * inv_volume[i]) * (area[i+1] * flux[i+1] - area[i] * flux[i]),
  // with area/flux indexed by face (cells + 1 entries).
  void (*apply_divergence)(std::size_t cells, double dt, const double* inv_volume, const double* area,
                           const double* flux, double* n);

  // max_i (area[i+1] * (diff[i+1] * inv_h[i+1] + max(-drift[i+1], 0))
  //        + area[i] * (diff[i] * inv_h[i] + max(drift[i], 0))) * inv_volume[i]
  // (the rate at which cell i can lose its own mass).
  double (*max_outflow_rate)(std::size_t cells, const double* inv_volume, const double* area,
                             const double* diff, const double* drift, const double* inv_h);

  // sum_i w[i] * f[i]
  double (*weighted_sum)(std::size_t count, const double* w, const double* f);

  // sum_i w[i] * a[i] * b[i]
  double (*weighted_dot)(std::size_t count, const double* w, const double* a, const double* b);
};

const KernelTable& scalar_table();

// nullptr when the binary or the CPU lacks AVX2.
const KernelTable* avx2_table();

// Runtime selection, fixed on first use.
const KernelTable& active();

} // namespace gravodiff::kernels
