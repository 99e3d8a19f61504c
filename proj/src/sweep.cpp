#include "gravodiff/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gravodiff/output.hpp"
#include "gravodiff/run.hpp"

namespace gravodiff {

using nlohmann::json;

int sweep_threads(const SweepPlan& plan, std::size_t points) {
  int threads = plan.parallelism > 0 ? plan.parallelism : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GRAVODIFF_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  threads = std::max(threads, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(points, 1)));
}

namespace {

struct PointOutcome {
  std::string line;
  bool completed = false;
};

PointOutcome run_point(std::size_t index, const SweepPoint& point) {
  json line;
  line["index"] = index;
  json params = json::object();
  for (const auto& [path, value] : point.parameters) params[path] = json::parse(value);
  line["parameters"] = params;
  PointOutcome result;
  try {
    RunConfig cfg = parse_config(point.document);
    cfg.output.path.clear();
    cfg.output.snapshot.clear();
    const RunResult r = run(cfg);
    line["outcome"] = to_string(r.outcome);
    line["message"] = r.message;
    line["final"] = r.records.empty() ? json() : json::parse(record_json(r.records.back()));
    const json m = json::parse(monitors_json(r.monitors));
    json violations = json::object();
    for (const char* key : {"growth_violations", "lyapunov_violations", "energy_violations", "positivity_violations",
                            "growth_bound_exceedances", "ratio_ceiling_violations", "refined_violations"})
      violations[key] = m[key];
    line["violations"] = violations;
    line["admissibility"] = m["admissibility"];
    result.completed = r.outcome == Outcome::Completed;
  } catch (const std::exception& e) {
    line["outcome"] = to_string(Outcome::StepFailure);
    line["message"] = e.what();
  }
  result.line = line.dump();
  return result;
}

} // namespace

int run_sweep(const SweepPlan& plan, std::ostream& out) {
  const std::vector<SweepPoint> points = expand_sweep(plan);
  std::vector<PointOutcome> results(points.size());
  std::vector<char> done(points.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex appender;
  std::size_t written = 0;
  int failures = 0;

  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < points.size();) {
      PointOutcome r = run_point(i, points[i]);
      std::lock_guard lock(appender);
      results[i] = std::move(r);
      done[i] = 1;
      // Flush the completed prefix so lines appear in plan order.
      while (written < points.size() && done[written]) {
        out << results[written].line << '\n';
        if (!results[written].completed) ++failures;
        results[written].line.clear();
        ++written;
      }
      out.flush();
    }
  };
  const int threads = sweep_threads(plan, points.size());
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return failures;
}

} // namespace gravodiff
