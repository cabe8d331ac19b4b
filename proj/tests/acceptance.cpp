// Acceptance suite: runs every verification criterion at its pinned tolerance
// and prints one pass/fail line per criterion. Exits nonzero on any failure.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "sigwaste/reproduce.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0x5157A5ull;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--seed") == 0)
      seed = std::strtoull(argv[i + 1], nullptr, 10);

  const auto results = sigw::reproduce::run_all(seed);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-34s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
