// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one pass/fail line per criterion, with the per-case
// breakdown above it. Exits nonzero if any criterion fails.
#include <cstdio>
#include <iostream>

#include "ckepler/verify.hpp"

int main() {
  ckepler::verify::Options opts;
  opts.log = [](const std::string& line) { std::cout << "  " << line << "\n"; };

  const auto results = ckepler::verify::run(opts);

  std::cout << "\n";
  int passed = 0;
  for (const auto& r : results) {
    int ok = 0;
    for (const auto& c : r.cases) ok += c.pass ? 1 : 0;
    std::printf("[%s] criterion %2d (%s): %s -- %d/%zu cases, %.1fs\n",
                r.pass ? "PASS" : "FAIL", r.id, r.slug.c_str(), r.title.c_str(),
                ok, r.cases.size(), r.seconds);
    passed += r.pass ? 1 : 0;
  }
  std::printf("%d/%zu criteria passed\n", passed, results.size());
  return ckepler::verify::all_pass(results) ? 0 : 1;
}
