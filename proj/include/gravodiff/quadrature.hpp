#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace gravodiff::quad {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
// (abscissae in decreasing order, the last one is the centre).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the nodes kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct RuleResult {
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0; // Kronrod estimate of the integral of |f|
};

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  double abs_value = 0.0;
  int intervals = 0;
  bool converged = false;
};

// One application of the 7/15 pair on [a, b], with the QUADPACK error model.
template <class F>
RuleResult kronrod15(F&& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(kronrod);
  std::array<double, 7> f1{}, f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    const double pair = f1[j] + f2[j];
    kronrod += kKronrodWeights[j] * pair;
    abs_sum += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j)
    asc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  RuleResult r;
  r.value = kronrod * half;
  r.abs_value = abs_sum * std::abs(half);
  asc *= std::abs(half);
  double err = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (r.abs_value > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * r.abs_value, err);
  r.error = err;
  return r;
}

// Globally adaptive bisection: split the interval with the largest error
// estimate until the summed estimate is within max(abs_tol, rel_tol*|I|).
template <class F>
AdaptiveResult integrate(F&& f, double a, double b, double rel_tol, double abs_tol = 0.0,
                         int max_intervals = 200) {
  struct Piece {
    double a, b;
    RuleResult r;
  };
  auto cmp = [](const Piece& x, const Piece& y) { return x.r.error < y.r.error; };
  std::vector<Piece> heap;
  heap.reserve(static_cast<std::size_t>(max_intervals) + 1);
  heap.push_back({a, b, kronrod15(f, a, b)});

  AdaptiveResult out;
  double value = heap.front().r.value;
  double error = heap.front().r.error;
  double abs_value = heap.front().r.abs_value;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (;;) {
    const double target = std::max(abs_tol, rel_tol * std::abs(value));
    if (error <= target || error <= 64.0 * eps * abs_value) {
      out.converged = true;
      break;
    }
    if (static_cast<int>(heap.size()) >= max_intervals) break;
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const Piece worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // interval cannot be split further in double precision
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), cmp);
      break;
    }
    Piece left{worst.a, mid, kronrod15(f, worst.a, mid)};
    Piece right{mid, worst.b, kronrod15(f, mid, worst.b)};
    value += left.r.value + right.r.value - worst.r.value;
    error += left.r.error + right.r.error - worst.r.error;
    abs_value += left.r.abs_value + right.r.abs_value - worst.r.abs_value;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), cmp);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), cmp);
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  abs_value = 0.0;
  for (const auto& p : heap) {
    value += p.r.value;
    error += p.r.error;
    abs_value += p.r.abs_value;
  }
  out.value = value;
  out.error = error;
  out.abs_value = abs_value;
  out.intervals = static_cast<int>(heap.size());
  if (!out.converged)
    out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value)) ||
                    error <= 64.0 * eps * abs_value;
  return out;
}

} // namespace gravodiff::quad
