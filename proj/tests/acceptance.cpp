// Acceptance suite: one PASS/FAIL line per criterion.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "torusmono/verify.hpp"

int main(int argc, char** argv) {
  torusmono::VerifyOptions opts;
  if (argc > 1) opts.seed = std::strtoull(argv[1], nullptr, 10);
  int failures = 0;
  for (const auto& r : torusmono::run_suite(torusmono::Suite::All, opts)) {
    std::printf("%s\n", torusmono::format_result(r).c_str());
    std::fflush(stdout);
    if (!r.passed) ++failures;
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
