#pragma once

#include <array>
#include <string>
#include <vector>

#include "zevrpp/fit/softmax_affine.hpp"
#include "zevrpp/gp/problem.hpp"

namespace zevrpp::hull {

struct HullVars {
  gp::Variable L, B, T, D;
};

HullVars add_hull_vars(gp::Problem& p, const std::string& prefix);

// delta1 (B/T)^delta2 fitted to the stability posynomial on [lo, hi].
struct StabilityFit {
  double delta1 = 1.0;
  double delta2 = 1.0;
  double rmse_log = 0.0;
  double max_rel_error = 0.0;
};

StabilityFit fit_stability(double beta, double lo = 2.5, double hi = 6.0, int n = 400);

// delta1 (B/T)^delta2 >= (eps_gm + kg) / (beta_KB T)
gp::Constraint stability_constraint(const HullVars& h, double beta, const gp::Expr& kg, double eps_gm,
                                    const StabilityFit& fit);

// h_BM = 7 B^2 / (120 C_B T)
gp::Monomial bm_monomial(const HullVars& h, double beta);

struct WettedArea {
  gp::Variable area;
  std::array<gp::Variable, 4> rg;
  std::vector<gp::Constraint> constraints;
};

// A_S >= 2 L phi_A (B/16) sum S_k sqrt(r_k), r_k >= 1 + (2/B)^{2 beta} (T beta)^2 (k B / 6)^{2 beta - 2}
WettedArea wetted_area_constraints(gp::Problem& p, const HullVars& h, double beta, double phi_a,
                                   const std::string& prefix);

// Midship arc length to the waterline as used above (without phi_A, 2L).
gp::Expr midship_arc_expr(const WettedArea& w, const HullVars& h);

struct ArrangementVars {
  int n_rooms = 1;
  std::vector<gp::Variable> w, l, lt;  // rooms 1..ceil(n/2), foremost first
  gp::Variable h, ht, ht_roro, h_roro;

  int center() const { return n_rooms / 2; }  // 0-based index of the centermost room
};

ArrangementVars add_arrangement_vars(gp::Problem& p, int n_rooms, const std::string& prefix);

struct ArrangementParams {
  double beta = 6.0;
  double h_batt_min = 2.5;
  double h_roro_min = 5.0;
  double floor_fraction = 0.1;  // h~_batt >= fraction * D
};

// room_volume: the monomial Q rho_vol / N_room.
std::vector<gp::Constraint> arrangement_constraints(const ArrangementVars& a, const HullVars& h,
                                                    const gp::Monomial& room_volume,
                                                    const ArrangementParams& prm);

// beta/(beta+1) h_roro B (h_roro/T)^{1/beta} sqrt(2 l_k / L)
gp::Monomial bulkhead_area_monomial(const gp::Variable& l_k, const HullVars& h, const gp::Variable& h_roro,
                                    double beta);

}  // namespace zevrpp::hull
