#pragma once

#include <string>
#include <vector>

#include "zevrpp/gp/problem.hpp"

namespace zevrpp::gp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit, NodeLimit };

std::string to_string(Status s);

struct Tolerances {
  double feas = 1e-8;
  double kkt = 1e-8;
  double gap_rel = 1e-6;
  int max_iter = 400;
  double box = 120.0;  // |log x| limit; hitting it reports Unbounded
};

struct BnbConfig {
  long node_limit = 20000;
  double default_int_ub = 16;
  bool warm_start = true;
};

struct Solution {
  Status status = Status::IterationLimit;
  std::vector<double> values;  // indexed by VarId
  double objective = 0.0;
  double kkt_residual = 0.0;
  long bnb_nodes = 0;
  double relaxation_bound = 0.0;
  int iterations = 0;

  double operator[](const Variable& v) const { return values.at(v.id); }
};

Solution solve_convex_relaxation(const Problem& p, const Tolerances& tol = {});

// Same as above with integer variables held within the given box
// (lb, ub indexed like Problem::integer_vars()). warm is an optional
// log-space starting guess indexed by VarId.
Solution solve_relaxation_bounded(const Problem& p, const std::vector<double>& int_lb,
                                  const std::vector<double>& int_ub, const Tolerances& tol,
                                  const std::vector<double>* warm = nullptr,
                                  double default_int_ub = 16);

Solution solve_migp(const Problem& p, const Tolerances& tol = {}, const BnbConfig& cfg = {});

// Stationarity plus complementarity residual of the log-space problem at x,
// with nonnegative multipliers estimated by NNLS.
double kkt_residual(const Problem& p, const std::vector<double>& x);

}  // namespace zevrpp::gp
