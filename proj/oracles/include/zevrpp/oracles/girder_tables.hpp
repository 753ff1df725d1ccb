#pragma once

#include <boost/rational.hpp>

// Exact parallel-axis and shear-flow sums over the midship element tables,
// with B, D, p_td given as rationals.
namespace zevrpp::oracles {

using Rational = boost::rational<long long>;

struct GirderRationals {
  Rational z_na;     // neutral axis height
  Rational inertia;  // second moment about the neutral axis
  Rational q_b, q_ad, q_cd, q_e;  // shear flow per unit force at nodes
};

GirderRationals girder_from_tables(Rational B, Rational D, Rational p_td);

}  // namespace zevrpp::oracles
