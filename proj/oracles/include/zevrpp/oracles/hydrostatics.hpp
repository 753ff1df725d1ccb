#pragma once

#include "zevrpp/hull/hydrostatics.hpp"

// Adaptive-quadrature integrals of the offset functions. Full-breadth
// quantities integrate both sides (2 H).
namespace zevrpp::oracles {

double volume_quad(const hull::HullParams& h);
double block_coefficient_quad(double beta);
double kb_fraction_quad(double beta);
double lcb_fraction_quad(double beta);
double waterplane_inertia_quad(const hull::HullParams& h);
double bulkhead_area_quad(double l_k, double h_roro, const hull::HullParams& h);
double midship_arc_quad(double B, double T, double beta);

}  // namespace zevrpp::oracles
