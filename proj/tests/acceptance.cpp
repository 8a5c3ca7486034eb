// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <cstdio>
#include <tdg/selftest.hpp>

int main() {
  int failed = 0;
  for (const tdg::CriterionResult& r : tdg::run_selftest()) {
    std::printf("%s  %-34s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.details.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  if (failed) std::printf("%d criteria failed\n", failed);
  return failed ? 1 : 0;
}
