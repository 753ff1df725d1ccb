#include "zevrpp/hull/constraints.hpp"

#include <cmath>
#include <stdexcept>

#include "zevrpp/hull/hydrostatics.hpp"

namespace zevrpp::hull {

using gp::Constraint;
using gp::Expr;
using gp::Monomial;
using gp::Variable;

HullVars add_hull_vars(gp::Problem& p, const std::string& prefix) {
  return {p.add_var(prefix + "L"), p.add_var(prefix + "B"), p.add_var(prefix + "T"), p.add_var(prefix + "D")};
}

StabilityFit fit_stability(double beta, double lo, double hi, int n) {
  auto data = fit::FitData::sample_1d([&](double r) { return stability_posynomial(r, beta); }, lo, hi, n);
  auto f = fit::fit_softmax_affine(data, 1);
  StabilityFit s;
  s.delta1 = std::exp(f.b[0]);
  s.delta2 = f.a(0, 0);
  s.rmse_log = f.rmse_log;
  for (int i = 0; i < n; ++i) {
    double r = lo + (hi - lo) * i / (n - 1);
    double truth = stability_posynomial(r, beta);
    s.max_rel_error = std::max(s.max_rel_error, std::abs(s.delta1 * std::pow(r, s.delta2) / truth - 1));
  }
  return s;
}

Constraint stability_constraint(const HullVars& h, double beta, const Expr& kg, double eps_gm,
                                const StabilityFit& fit) {
  Monomial lhs = Monomial(fit.delta1) * (Monomial(h.B) / Monomial(h.T)).pow(fit.delta2) *
                 Monomial(kb_fraction(beta)) * Monomial(h.T);
  return gp::le(Expr(eps_gm) + kg, lhs);
}

Monomial bm_monomial(const HullVars& h, double beta) {
  return Monomial(7.0 / (120 * block_coefficient(beta))) * Monomial(h.B).pow(2) / Monomial(h.T);
}

WettedArea wetted_area_constraints(gp::Problem& p, const HullVars& h, double beta, double phi_a,
                                   const std::string& prefix) {
  static constexpr double S[4] = {1, 3, 3, 1};
  WettedArea w;
  w.area = p.add_var(prefix + "A_S");
  for (int k = 0; k < 4; ++k) {
    w.rg[static_cast<size_t>(k)] = p.add_var(prefix + "r_g" + std::to_string(k));
    // (2/B)^{2b} (T b)^2 (k B/6)^{2b-2} collapses to c T^2 / B^2
    double c = k == 0 ? (beta == 1.0 ? 1.0 : 0.0) : std::pow(k / 6.0, 2 * beta - 2);
    c *= std::pow(2.0, 2 * beta) * beta * beta;
    Expr rhs(1.0);
    if (c > 0) rhs = rhs + Expr(Monomial(c) * Monomial(h.T).pow(2) / Monomial(h.B).pow(2));
    w.constraints.push_back(gp::ge(Monomial(w.rg[static_cast<size_t>(k)]), rhs));
    w.constraints.back().label = prefix + "arc point " + std::to_string(k);
  }
  std::vector<Expr> terms;
  for (int k = 0; k < 4; ++k)
    terms.emplace_back(Monomial(2 * phi_a * S[k] / 16) * Monomial(h.L) * Monomial(h.B) *
                       Monomial(w.rg[static_cast<size_t>(k)]).pow(0.5));
  w.constraints.push_back(gp::ge(Monomial(w.area), gp::sum(terms)));
  w.constraints.back().label = prefix + "area";
  return w;
}

Expr midship_arc_expr(const WettedArea& w, const HullVars& h) {
  static constexpr double S[4] = {1, 3, 3, 1};
  std::vector<Expr> terms;
  for (int k = 0; k < 4; ++k)
    terms.emplace_back(Monomial(S[k] / 16) * Monomial(h.B) * Monomial(w.rg[static_cast<size_t>(k)]).pow(0.5));
  return gp::sum(terms);
}

ArrangementVars add_arrangement_vars(gp::Problem& p, int n_rooms, const std::string& prefix) {
  if (n_rooms < 1 || n_rooms % 2 == 0) throw std::invalid_argument("number of battery rooms must be odd");
  ArrangementVars a;
  a.n_rooms = n_rooms;
  for (int k = 1; k <= (n_rooms + 1) / 2; ++k) {
    auto s = std::to_string(k);
    a.w.push_back(p.add_var(prefix + "w_batt" + s));
    a.l.push_back(p.add_var(prefix + "l_batt" + s));
    a.lt.push_back(p.add_var(prefix + "lt_batt" + s));
  }
  a.h = p.add_var(prefix + "h_batt");
  a.ht = p.add_var(prefix + "ht_batt");
  a.ht_roro = p.add_var(prefix + "ht_roro");
  a.h_roro = p.add_var(prefix + "h_roro");
  return a;
}

std::vector<Constraint> arrangement_constraints(const ArrangementVars& a, const HullVars& h,
                                                const Monomial& room_volume, const ArrangementParams& prm) {
  if (a.n_rooms < 1 || a.n_rooms % 2 == 0) throw std::invalid_argument("number of battery rooms must be odd");
  std::vector<Constraint> out;
  auto add = [&](Constraint c, std::string label) {
    c.label = std::move(label);
    out.push_back(std::move(c));
  };
  add(gp::mono_ge(Monomial(a.h), prm.h_batt_min), "room height");
  add(gp::mono_ge(Monomial(a.h_roro), prm.h_roro_min), "ro-ro deck height");
  add(gp::ge(Monomial(a.ht), Expr(Monomial(prm.floor_fraction) * Monomial(h.D))), "room floor");
  const size_t n = a.w.size();
  for (size_t k = 0; k < n; ++k) {
    auto room = " " + std::to_string(k + 1);
    add(gp::eq(Monomial(a.w[k]) * Monomial(a.h) * Monomial(a.l[k]), room_volume), "room volume" + room);
    // w/2 <= H_fore(lt, ht)
    Monomial half_breadth = Monomial(0.5) * Monomial(h.B) * (Monomial(2.0) * Monomial(a.lt[k]) / Monomial(h.L)).pow(0.5) *
                            (Monomial(a.ht) / Monomial(h.T)).pow(1 / prm.beta);
    add(gp::le(Expr(Monomial(0.5) * Monomial(a.w[k])), half_breadth), "room inside hull" + room);
    add(gp::le(Expr(a.lt[k]), Monomial(0.5) * Monomial(h.L)), "room forward half" + room);
  }
  for (size_t k = 0; k + 1 < n; ++k)
    add(gp::le(Expr(a.l[k]) + Expr(a.lt[k]), Monomial(a.lt[k + 1])), "room spacing " + std::to_string(k + 1));
  const size_t c = n - 1;
  add(gp::le(Expr(a.lt[c]) + Expr(Monomial(0.5) * Monomial(a.l[c])), Monomial(lcb_fraction(prm.beta)) * Monomial(h.L)),
      "longitudinal balance");
  add(gp::le(Expr(a.h) + Expr(a.ht), Monomial(a.ht_roro)), "battery deck below ro-ro deck");
  add(gp::le(Expr(h.T), Monomial(a.ht_roro)), "ro-ro deck above waterline");
  add(gp::le(Expr(a.ht_roro) + Expr(a.h_roro), Monomial(h.D)), "depth");
  return out;
}

Monomial bulkhead_area_monomial(const Variable& l_k, const HullVars& h, const Variable& h_roro, double beta) {
  return Monomial(beta / (beta + 1)) * Monomial(h_roro) * Monomial(h.B) *
         (Monomial(h_roro) / Monomial(h.T)).pow(1 / beta) *
         (Monomial(2.0) * Monomial(l_k) / Monomial(h.L)).pow(0.5);
}

}  // namespace zevrpp::hull
