// Acceptance criteria 1..10: one PASS/FAIL line each, non-zero exit on any failure.

#include <cstdio>
#include <exception>

#include "soco/selftest.hpp"

int main() {
  try {
    soco::SelftestOptions opt;
    bool ok = true;
    for (const soco::SuiteResult& r : soco::run_selftest(opt)) {
      std::printf("%s\n", soco::format_result(r).c_str());
      ok = ok && r.pass;
    }
    std::printf("%s\n", ok ? "acceptance: all criteria pass" : "acceptance: FAILED");
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::printf("acceptance: error: %s\n", e.what());
    return 1;
  }
}
