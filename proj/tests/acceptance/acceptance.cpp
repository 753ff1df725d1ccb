// One PASS/FAIL line per acceptance criterion. Failures with an analysed
// cause print as "FAIL (known: ...)" and only affect the exit code with --strict.

#include <fmt/format.h>

#include <cstring>

#include "zevrpp/oracles/suite.hpp"

int main(int argc, char** argv) {
  bool strict = false, verbose = false;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--strict")) strict = true;
    if (!std::strcmp(argv[i], "-v") || !std::strcmp(argv[i], "--verbose")) verbose = true;
  }
  zevrpp::oracles::SuiteOptions opt;
  opt.data_dir = ZEVRPP_DATA_DIR;
  auto results = zevrpp::oracles::run_suite(opt);

  int unexpected = 0, known = 0;
  for (auto& r : results) {
    std::string verdict = "PASS";
    if (!r.pass()) {
      if (r.known.empty()) {
        verdict = "FAIL";
        ++unexpected;
      } else {
        verdict = "FAIL (known: " + r.known + ")";
        ++known;
      }
    }
    fmt::print("criterion {:<3} {} [{:.1f} s]: {}\n", r.id, r.title, r.seconds, verdict);
    for (auto& c : r.checks)
      if (verbose || !c.pass) fmt::print("    {:<4} {} = {:.6g} (limit {:.3g})\n", c.pass ? "ok" : "FAIL", c.name,
                                         c.value, c.limit);
  }
  fmt::print("{} criteria, {} unexpected failures, {} known failures\n", results.size(), unexpected, known);
  return unexpected > 0 || (strict && known > 0) ? 1 : 0;
}
