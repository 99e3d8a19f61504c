#pragma once

#include <ostream>

#include "gravodiff/config.hpp"

namespace gravodiff {

// Worker count: plan.parallelism (0: available parallelism), capped by
// GRAVODIFF_THREADS when set, and by the number of points.
int sweep_threads(const SweepPlan& plan, std::size_t points);

// Runs every point and writes one JSON line per point to `out`, in plan order
// regardless of completion order. Output files named in the base document are
// not written. A point that throws is reported as outcome "step-failure".
// Returns the number of points whose outcome is not "completed".
int run_sweep(const SweepPlan& plan, std::ostream& out);

} // namespace gravodiff
