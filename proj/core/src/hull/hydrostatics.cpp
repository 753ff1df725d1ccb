#include "zevrpp/hull/hydrostatics.hpp"

#include <cmath>
#include <stdexcept>

namespace zevrpp::hull {

double offset(Section s, double y, double z, const HullParams& h) {
  if (y < 0 || y > h.L / 2 || z < 0 || z > h.T) throw std::out_of_range("offset coordinates outside the hull");
  if (s == Section::Fore) return h.B / 2 * std::sqrt(2 * y / h.L) * std::pow(z / h.T, 1 / h.beta);
  if (y == h.L / 2) throw std::out_of_range("aft offset undefined at the stern");
  return h.B / 2 * std::pow(z / h.T, 1 / (h.beta * (1 - 2 * y / h.L)));
}

double block_coefficient(double beta) {
  return 0.5 + beta / (3 * (1 + beta)) - std::log(beta + 1) / (2 * beta);
}

double kb_fraction(double beta) {
  const double bh = beta + 1, bt = 2 * beta + 1;
  double num = beta * bh * bt / 2 - bh * bt * std::log(bt) / 4 + 2 * beta * beta * bh / 3;
  double den = beta * bh * bt - bh * bt * std::log(bh) + 2 * beta * beta * bt / 3;
  return num / den;
}

double lcb_fraction_printed(double beta) {
  const double bh = beta + 1, bt = 2 * beta + 1;
  double num = 2 * std::pow(beta, 3) / (5 * bh) + 1.5 * beta * beta + beta - bt * std::log(bh);
  double den = 2 * std::pow(beta, 3) / (3 * bh) + beta * beta - beta * std::log(bh);
  return num / den;
}

double lcb_fraction(double beta) { return lcb_fraction_printed(beta) / 2; }

double waterplane_inertia(double L, double B) { return 7 * L * B * B * B / 120; }

double bm_height(double B, double T, double beta) {
  return 7 * B * B / (120 * block_coefficient(beta) * T);
}

double midship_arc_integrand(double x, double B, double T, double beta) {
  return std::sqrt(1 + std::pow(2 / B, 2 * beta) * (T * beta) * (T * beta) * std::pow(x, 2 * beta - 2));
}

double midship_arc_simpson(double B, double T, double beta) {
  static constexpr double S[4] = {1, 3, 3, 1};
  double s = 0;
  for (int k = 0; k < 4; ++k) s += S[k] * midship_arc_integrand(k * B / 6, B, T, beta);
  return B / 16 * s;
}

double bulkhead_area(double l_k, double h_roro, const HullParams& h) {
  if (l_k < 0 || l_k > h.L / 2) throw std::out_of_range("bulkhead must lie in the fore body");
  return h.beta / (h.beta + 1) * h_roro * h.B * std::pow(h_roro / h.T, 1 / h.beta) * std::sqrt(2 * l_k / h.L);
}

double stability_posynomial(double b_over_t, double beta) {
  return 1 + 7 / (120 * block_coefficient(beta) * kb_fraction(beta)) * b_over_t * b_over_t;
}

}  // namespace zevrpp::hull
