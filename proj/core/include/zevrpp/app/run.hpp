#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "zevrpp/model/model.hpp"

namespace zevrpp::app {

enum ExitCode { kOptimal = 0, kInputError = 1, kInfeasible = 2, kValidationFailure = 3, kSolverLimit = 4 };

// Fits keyed by hull form and fit file; safe to share between threads.
class FitsCache {
 public:
  const model::ModelFits& get(const model::Scenario& sc);

 private:
  std::mutex mu_;
  std::map<std::pair<double, std::string>, model::ModelFits> fits_;
};

struct RunOutcome {
  gp::Status status = gp::Status::IterationLimit;
  std::optional<model::FleetSolution> fleet;
  std::string error;  // validation message when validation failed
  double seconds = 0;
  ExitCode code = kSolverLimit;
};

RunOutcome run_case(const model::Scenario& sc, FitsCache& fits);

// name is a model parameter or "u_min". Throws std::out_of_range for unknown names.
void apply_override(model::Scenario& sc, const std::string& name, double value);

// "name=value"; throws std::invalid_argument when malformed.
std::pair<std::string, double> parse_override(const std::string& text);

struct SweepPoint {
  double value = 0;
  RunOutcome outcome;
};

// steps >= 2 evenly spaced values in [lo, hi], solved independently on
// `threads` workers; results in grid order.
std::vector<SweepPoint> sweep(const model::Scenario& base, const std::string& param, double lo, double hi,
                              int steps, int threads, FitsCache& fits);

// ZEVRPP_THREADS, else the hardware concurrency.
int default_threads();

}  // namespace zevrpp::app
