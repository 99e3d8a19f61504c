#include <immintrin.h>

#include <algorithm>

#include "gravodiff/kernels.hpp"

namespace gravodiff::kernels {

namespace {

constexpr std::size_t kLanes = 4;

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline double horizontal_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

void face_flux(std::size_t count, const double* diff, const double* drift, const double* left,
               const double* right, const double* inv_h, double* flux) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t f = 0;
  for (; f + kLanes <= count; f += kLanes) {
    const __m256d w = _mm256_loadu_pd(drift + f);
    const __m256d l = _mm256_loadu_pd(left + f);
    const __m256d r = _mm256_loadu_pd(right + f);
    const __m256d upwind = _mm256_blendv_pd(l, r, _mm256_cmp_pd(w, zero, _CMP_GT_OQ));
    const __m256d grad = _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(diff + f), _mm256_sub_pd(r, l)),
                                       _mm256_loadu_pd(inv_h + f));
    _mm256_storeu_pd(flux + f, _mm256_add_pd(grad, _mm256_mul_pd(upwind, w)));
  }
  for (; f < count; ++f) {
    const double upwind = drift[f] > 0.0 ? right[f] : left[f];
    flux[f] = diff[f] * (right[f] - left[f]) * inv_h[f] + upwind * drift[f];
  }
}

void apply_divergence(std::size_t cells, double dt, const double* inv_volume, const double* area,
                      const double* flux, double* n) {
  const __m256d step = _mm256_set1_pd(dt);
  std::size_t i = 0;
  for (; i + kLanes <= cells; i += kLanes) {
    const __m256d outer = _mm256_mul_pd(_mm256_loadu_pd(area + i + 1), _mm256_loadu_pd(flux + i + 1));
    const __m256d inner = _mm256_mul_pd(_mm256_loadu_pd(area + i), _mm256_loadu_pd(flux + i));
    const __m256d scale = _mm256_mul_pd(step, _mm256_loadu_pd(inv_volume + i));
    const __m256d update = _mm256_mul_pd(scale, _mm256_sub_pd(outer, inner));
    _mm256_storeu_pd(n + i, _mm256_add_pd(_mm256_loadu_pd(n + i), update));
  }
  for (; i < cells; ++i)
    n[i] += (dt * inv_volume[i]) * (area[i + 1] * flux[i + 1] - area[i] * flux[i]);
}

double max_outflow_rate(std::size_t cells, const double* inv_volume, const double* area,
                        const double* diff, const double* drift, const double* inv_h) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d best = zero;
  std::size_t i = 0;
  for (; i + kLanes <= cells; i += kLanes) {
    const __m256d wr = _mm256_loadu_pd(drift + i + 1);
    const __m256d wl = _mm256_loadu_pd(drift + i);
    const __m256d dr = _mm256_mul_pd(_mm256_loadu_pd(diff + i + 1), _mm256_loadu_pd(inv_h + i + 1));
    const __m256d dl = _mm256_mul_pd(_mm256_loadu_pd(diff + i), _mm256_loadu_pd(inv_h + i));
    const __m256d out_right =
        _mm256_mul_pd(_mm256_loadu_pd(area + i + 1), _mm256_add_pd(dr, _mm256_max_pd(_mm256_sub_pd(zero, wr), zero)));
    const __m256d out_left = _mm256_mul_pd(_mm256_loadu_pd(area + i), _mm256_add_pd(dl, _mm256_max_pd(wl, zero)));
    best = _mm256_max_pd(best, _mm256_mul_pd(_mm256_add_pd(out_right, out_left), _mm256_loadu_pd(inv_volume + i)));
  }
  double rate = horizontal_max(best);
  for (; i < cells; ++i) {
    const double out_right = area[i + 1] * (diff[i + 1] * inv_h[i + 1] + std::max(-drift[i + 1], 0.0));
    const double out_left = area[i] * (diff[i] * inv_h[i] + std::max(drift[i], 0.0));
    rate = std::max(rate, (out_right + out_left) * inv_volume[i]);
  }
  return rate;
}

double weighted_sum(std::size_t count, const double* w, const double* f) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= count; i += 2 * kLanes) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(f + i + 4)));
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < count; ++i) sum += w[i] * f[i];
  return sum;
}

double weighted_dot(std::size_t count, const double* w, const double* a, const double* b) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= count; i += 2 * kLanes) {
    const __m256d p0 = _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i)),
                                     _mm256_loadu_pd(b + i));
    const __m256d p1 = _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(a + i + 4)),
                                     _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_add_pd(acc0, p0);
    acc1 = _mm256_add_pd(acc1, p1);
  }
  double sum = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < count; ++i) sum += w[i] * a[i] * b[i];
  return sum;
}

} // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", face_flux, apply_divergence, max_outflow_rate, weighted_sum,
                                 weighted_dot};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
}

} // namespace gravodiff::kernels
