// Acceptance binary: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Usage: gravodiff_acceptance [--tamper-p1 F] [id ...]

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "gravodiff/verify.hpp"

int main(int argc, char** argv) {
  gravodiff::VerifyOptions opt;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--tamper-p1") == 0 && i + 1 < argc) opt.tamper_p1 = std::atof(argv[++i]);
    else opt.only.push_back(std::atoi(argv[i]));
  }
  int failed = 0;
  for (const auto& r : gravodiff::run_verification(opt)) {
    std::cout << gravodiff::format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  }
  std::cout << (failed ? "FAILED " : "ALL PASS ") << failed << " failing criteria" << std::endl;
  return failed ? 1 : 0;
}
