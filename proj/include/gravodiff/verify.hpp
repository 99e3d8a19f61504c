#pragma once

#include <string>
#include <vector>

// The acceptance suite: one self-contained check per criterion.

namespace gravodiff {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

struct VerifyOptions {
  // Multiplies the reported p1 of every EOS built by the suite (fault injection).
  double tamper_p1 = 1.0;
  // Criterion ids to run; empty runs all.
  std::vector<int> only;
};

int criterion_count();
std::string criterion_name(int id);

std::vector<CriterionResult> run_verification(const VerifyOptions& options = {});

// "PASS  7 poisson-oracle  0.12 s  <detail>"
std::string format_result(const CriterionResult& r);

} // namespace gravodiff
