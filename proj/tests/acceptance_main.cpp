// Acceptance suite: runs every verification bound and prints one line per
// check. Exits nonzero if anything is out of tolerance.

#include <cstdio>

#include "ctqw/verify.hpp"

int main() {
  const std::vector<ctqw::CheckResult> results = ctqw::run_acceptance_checks();
  int failures = 0;
  for (const auto& result : results) {
    std::puts(ctqw::format_check_line(result).c_str());
    if (!result.pass) ++failures;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 1;
}
