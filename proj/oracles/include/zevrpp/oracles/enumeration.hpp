#pragma once

#include <vector>

#include "zevrpp/gp/solver.hpp"

namespace zevrpp::oracles {

struct EnumResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> ints;  // ordered like Problem::integer_vars()
  long points = 0;
};

// Exhaustive search over the integer grid [lb, ub] with one convex solve per
// grid point. Ties go to the lexicographically smallest integer vector.
EnumResult enumerate_migp(const gp::Problem& p, const std::vector<double>& lb,
                          const std::vector<double>& ub, const gp::Tolerances& tol = {});

}  // namespace zevrpp::oracles
