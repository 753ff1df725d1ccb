#pragma once

#include <random>

#include "zevrpp/gp/problem.hpp"

namespace zevrpp::oracles {

// Constraint function in log space: log e(exp u) for PosyLE1, the affine
// log-monomial for MonoEQ1, p(exp u) - log m(exp u) for LogLE.
double log_space_value(const gp::Constraint& c, const gp::Assignment& u);

struct ConvexityReport {
  double worst = 0.0;  // max of F(θu+(1-θ)v) - θF(u) - (1-θ)F(v)
  int samples = 0;
  int skipped = 0;     // non-finite evaluations
};

// Samples (u, v, θ) uniformly in a box of half-width `spread` around `center`
// (missing variables centred at 0).
ConvexityReport sample_convexity(const gp::Constraint& c, std::mt19937_64& rng, int samples,
                                 const gp::Assignment& center = {}, double spread = 2.0);

ConvexityReport sample_convexity(const gp::Expr& e, std::mt19937_64& rng, int samples,
                                 const gp::Assignment& center = {}, double spread = 2.0);

}  // namespace zevrpp::oracles
