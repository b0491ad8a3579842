// Runs every acceptance criterion at its own tolerance and prints one line each.
#include <cstdio>

#include "rieffel/errors.hpp"
#include "rieffel/runner.hpp"

int main() {
  using namespace rieffel;
  const RunSettings s;
  int failed = 0;
  for (int n = 1; n <= kCriterionCount; ++n) {
    CriterionResult c;
    try {
      c = run_criterion(n, s);
    } catch (const Error& e) {
      c.number = n;
      c.pass = false;
      c.detail = e.what();
    }
    failed += !c.pass;
    std::printf("criterion %2d %s  %-52s residual %.3e  %.2fs  %s\n", c.number, c.pass ? "PASS" : "FAIL", c.title.c_str(),
                c.residual, c.elapsed, c.detail.c_str());
  }
  std::printf("%d/%d criteria passed\n", kCriterionCount - failed, kCriterionCount);
  return failed ? 1 : 0;
}
