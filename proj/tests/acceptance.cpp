// Acceptance criteria, one [PASS]/[FAIL] line each followed by the measured
// quantities. Runs the full set by default; --quick skips the slow ones.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <exception>

#include "weyllab/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace weyllab::acceptance;
  bool full = true;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quick") == 0) full = false;
  }
  int failed = 0;
  for (const auto& entry : all_criteria()) {
    if (!full && !entry.quick) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = entry.run();
    } catch (const std::exception& e) {
      std::printf("[FAIL] C%-2d threw: %s\n", entry.id, e.what());
      ++failed;
      continue;
    }
    if (c.seconds == 0.0) c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!c.pass()) ++failed;
    std::printf("%s\n", summary_line(c).c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", failed == 0 ? "all criteria passed" : "some criteria FAILED");
  return failed == 0 ? 0 : 1;
}
