#pragma once

#include <string>
#include <vector>

// The acceptance criteria as runnable oracle checks, shared by the
// acceptance binary and `zevrpp verify`.
namespace zevrpp::oracles {

struct OracleCheck {
  std::string name;
  double value = 0;  // measured delta or quantity
  double limit = 0;  // pass when value <= limit (or the check's own rule)
  bool pass = false;
};

struct CriterionResult {
  std::string id;  // "1", "4a", ...
  std::string title;
  std::vector<OracleCheck> checks;
  std::string known;  // analysed conflict explaining an expected failure
  double seconds = 0;

  bool pass() const;
};

struct SuiteOptions {
  std::string data_dir;
  int migp_instances = 20;
  bool baltic = true;  // criteria 6 and the Baltic part of 7
};

std::vector<CriterionResult> run_suite(const SuiteOptions& opt);

}  // namespace zevrpp::oracles
