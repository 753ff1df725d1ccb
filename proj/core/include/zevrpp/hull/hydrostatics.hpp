#pragma once

namespace zevrpp::hull {

struct HullParams {
  double L = 1.0;
  double B = 1.0;
  double T = 1.0;
  double D = 1.0;
  double beta = 6.0;
};

enum class Section { Fore, Aft };

// Half-breadth. Fore body: y from the forward perpendicular to amidships.
// Aft body: y from amidships towards the stern, exponent 1/(beta (1 - 2y/L)).
double offset(Section s, double y, double z, const HullParams& h);

double block_coefficient(double beta);

// KB / T
double kb_fraction(double beta);
// Distance of the buoyancy centroid from the forward perpendicular over L.
double lcb_fraction(double beta);
// As printed; twice lcb_fraction.
double lcb_fraction_printed(double beta);

// Second moment of the waterplane about the centreline, 7 L B^3 / 120.
double waterplane_inertia(double L, double B);
double bm_height(double B, double T, double beta);

// Keel-to-waterline midship arc length by the 4-point Simpson 3/8 rule.
double midship_arc_simpson(double B, double T, double beta);
// Integrand of the midship arc length at half-breadth x.
double midship_arc_integrand(double x, double B, double T, double beta);

// Full-breadth fore-body transverse bulkhead area up to h_roro at l_k.
double bulkhead_area(double l_k, double h_roro, const HullParams& h);

// 1 + 7/(120 C_B beta_KB) (B/T)^2
double stability_posynomial(double b_over_t, double beta);

}  // namespace zevrpp::hull
