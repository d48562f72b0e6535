// Acceptance suite: one PASS/FAIL line per criterion at the reference scenario.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "validation.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);

  int count = 0;
  int failed = 0;
  specshare::app::run_checks(specshare::app::acceptance_checks(seed, 0),
                             [&](const specshare::app::CheckResult& r) {
                               ++count;
                               if (!r.passed) ++failed;
                               std::printf("%s criterion %s: %s [%.1f s]\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                                           r.detail.c_str(), r.seconds);
                               std::fflush(stdout);
                             });
  std::printf("%d of %d criteria passed\n", count - failed, count);
  return failed == 0 ? 0 : 1;
}
