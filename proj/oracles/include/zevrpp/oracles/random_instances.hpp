#pragma once

#include <random>
#include <vector>

#include "zevrpp/gp/solver.hpp"

namespace zevrpp::oracles {

gp::Posynomial random_posynomial(std::mt19937_64& rng, const std::vector<gp::Variable>& vars,
                                 int terms);

// Random log-convex expression mixing every smooth node kind.
gp::Expr random_expr(std::mt19937_64& rng, const std::vector<gp::Variable>& vars, int depth);

struct ConstructedGp {
  gp::Problem problem;
  double optimum = 0.0;  // known optimal objective value
};

// Builds a program whose KKT point is planted: constraints active at a chosen
// point with positive multipliers, objective monomial matching stationarity.
ConstructedGp constructed_gp(std::mt19937_64& rng, int nvars, int nactive, int ninactive);

struct FleetInstance {
  gp::Problem problem;
  std::vector<double> lb, ub;  // integer box, ordered like integer_vars()
};

// Down-scaled route-planning shaped MIGP: per service a round-trip count and
// (for the first service) a fleet size, speed, capacity and flow.
FleetInstance random_fleet_migp(std::mt19937_64& rng, int services, int int_vars, int range);

}  // namespace zevrpp::oracles
