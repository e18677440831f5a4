// Runs the acceptance checks and prints one line per check. Optional arguments select checks by number.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "soergel/verify.hpp"

using namespace soergel;

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
  if (which.empty())
    for (int n = 1; n <= acceptance_count(); ++n) which.push_back(n);

  VerifyOptions opt;
  int failed = 0;
  for (int n : which) {
    CheckResult r = run_acceptance(n, opt);
    const char* tag = r.status == CheckStatus::Pass ? "PASS" : r.status == CheckStatus::Fail ? "FAIL" : "SKIP";
    std::printf("[%2d] %s %s | tolerance: exact | %.1fs | %s\n", n, tag, r.name.c_str(), r.seconds, r.detail.c_str());
    if (r.status == CheckStatus::Fail) {
      ++failed;
      std::printf("     witness: %s\n", r.witness.dump().c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu failed\n", failed, which.size());
  return failed ? 1 : 0;
}
