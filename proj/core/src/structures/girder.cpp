#include "zevrpp/structures/girder.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace zevrpp::structures {

using gp::Monomial;

SectionMonomials section_properties(const gp::Variable& B, const gp::Variable& D, const gp::Variable& p_td) {
  SectionMonomials s;
  s.p_sp = Monomial(0.5) * Monomial(B) * Monomial(p_td) / Monomial(D);
  s.p_bh = Monomial(2.0) * s.p_sp;
  s.p_bp = Monomial(2.0 / 3) * Monomial(p_td);
  s.z_na = Monomial(0.4) * Monomial(D);
  s.inertia = Monomial(133.0 / 150) * Monomial(p_td) * Monomial(B) * Monomial(D).pow(2);
  s.z_deck = Monomial(5.0 / 3) * s.inertia / Monomial(D);
  return s;
}

SectionValues section_values(double B, double D, double p_td) {
  double I = 133.0 / 150 * p_td * B * D * D;
  return {B * p_td / (2 * D), 0.4 * D, I, 5 * I / (3 * D)};
}

Monomial shear_flow_max(const gp::Variable& B, const gp::Variable& D, const gp::Variable& p_td) {
  auto s = section_properties(B, D, p_td);
  return Monomial(53.0 / 200) * Monomial(B) * Monomial(D) * Monomial(p_td) / s.inertia;
}

double shear_flow_max(double B, double D, double p_td) {
  return 53.0 / 200 * B * D * p_td / section_values(B, D, p_td).inertia;
}

double phi_hog(double cb) { return 1.9 * cb / (cb + 0.7); }

double wave_moment_factor(double cb, const LoadParams& prm) {
  return std::max(std::abs(prm.phi_sag), std::abs(phi_hog(cb)));
}

double stillwater_moment(double L, double B, double cb, const LoadParams& prm) {
  return prm.c_sw * L * L * B * (cb + 0.7);
}

double design_moment(double L, double B, double cb, const LoadParams& prm) {
  return (wave_moment_factor(cb, prm) * prm.c_wv + prm.c_sw) * L * L * B * (cb + 0.7);
}

double design_shear(double L, double B, double cb, const LoadParams& prm) {
  return (1.6 * prm.c_sw + std::abs(prm.phi_v) * prm.c_vwv) * L * B * (cb + 0.7);
}

DesignLoads design_loads(const gp::Variable& L, const gp::Variable& B, double cb, const LoadParams& prm) {
  return {Monomial(design_moment(1, 1, cb, prm)) * Monomial(L).pow(2) * Monomial(B),
          Monomial(design_shear(1, 1, cb, prm)) * Monomial(L) * Monomial(B)};
}

std::vector<gp::Constraint> strength_constraints(const gp::Variable& L, const gp::Variable& B,
                                                 const gp::Variable& D, const gp::Variable& p_td, double cb,
                                                 const StrengthParams& prm) {
  auto s = section_properties(B, D, p_td);
  auto loads = design_loads(L, B, cb, prm.loads);
  std::vector<gp::Constraint> out;
  out.push_back(gp::le(gp::Expr(Monomial(prm.unit_scale) * loads.m_des / s.z_deck), Monomial(prm.sigma_perm)));
  out.push_back(gp::le(gp::Expr(Monomial(prm.unit_scale) * shear_flow_max(B, D, p_td) * loads.v_des / s.p_sp),
                       Monomial(prm.tau_perm)));
  return out;
}

double section_area(double y, const hull::HullParams& h) {
  const double b = h.beta;
  if (y <= h.L / 2) return h.B * h.T * b / (b + 1) * std::sqrt(std::max(0.0, 2 * y / h.L));
  double s = std::max(0.0, 1 - 2 * (y - h.L / 2) / h.L);
  return h.B * h.T * b * s / (b * s + 1);
}

namespace {

double intensity(const std::vector<WeightBlock>& blocks, double y) {
  double w = 0;
  for (auto& blk : blocks)
    if (y >= blk.start && y < blk.end) w += blk.weight / (blk.end - blk.start);
  return w;
}

double cell_load(const std::vector<WeightBlock>& blocks, double a, double b) {
  double f = 0;
  for (auto& blk : blocks) {
    double lo = std::max(a, blk.start), hi = std::min(b, blk.end);
    if (hi > lo) f += blk.weight * (hi - lo) / (blk.end - blk.start);
  }
  return f;
}

void check_blocks(const std::vector<WeightBlock>& blocks) {
  for (auto& blk : blocks)
    if (!(blk.end > blk.start)) throw std::invalid_argument("weight block with empty extent");
}

// d.y, d.weight, d.buoyancy filled; net[i] is the load on cell (y[i-1], y[i]).
void integrate(LoadDistribution& d, const std::vector<double>& net) {
  const size_t n = d.y.size();
  d.shear.assign(n, 0.0);
  d.moment.assign(n, 0.0);
  double vmax = 0, mmax = 0;
  for (size_t i = 1; i < n; ++i) {
    d.shear[i] = d.shear[i - 1] + net[i];
    d.moment[i] = d.moment[i - 1] + 0.5 * (d.shear[i - 1] + d.shear[i]) * (d.y[i] - d.y[i - 1]);
    vmax = std::max(vmax, std::abs(d.shear[i]));
    mmax = std::max(mmax, std::abs(d.moment[i]));
  }
  double vend = std::abs(d.shear.back()), mend = std::abs(d.moment.back());
  if (vend > 0.01 * vmax + 1e-12 || mend > 0.01 * mmax + 1e-12)
    throw std::runtime_error(fmt::format(
        "unbalanced still-water loads: |V(L)| = {:.4g} (max {:.4g}), |M(L)| = {:.4g} (max {:.4g})", vend, vmax, mend,
        mmax));
}

}  // namespace

LoadDistribution stillwater_distribution(const hull::HullParams& h, const std::vector<WeightBlock>& blocks,
                                         double rho, int stations, double follows_buoyancy) {
  if (stations < 200) throw std::invalid_argument("at least 200 stations required");
  check_blocks(blocks);
  const double share = follows_buoyancy / (hull::block_coefficient(h.beta) * h.L * h.B * h.T);
  LoadDistribution d;
  const double dy = h.L / stations;
  std::vector<double> net(static_cast<size_t>(stations) + 1, 0.0);
  for (int i = 0; i <= stations; ++i) {
    double y = i * dy;
    d.y.push_back(y);
    double a = section_area(y, h);
    d.weight.push_back(intensity(blocks, y) + share * a);
    d.buoyancy.push_back(rho * a);
    if (i > 0) {
      auto k = static_cast<size_t>(i);
      double avg = 0.5 * (d.buoyancy[k - 1] + d.buoyancy[k]) * dy;
      net[k] = cell_load(blocks, y - dy, y) + (share / rho - 1) * avg;
    }
  }
  integrate(d, net);
  return d;
}

LoadDistribution stillwater_distribution(double L, const std::vector<WeightBlock>& weights,
                                         const std::vector<WeightBlock>& buoyancy, int stations) {
  if (stations < 200) throw std::invalid_argument("at least 200 stations required");
  check_blocks(weights);
  check_blocks(buoyancy);
  LoadDistribution d;
  const double dy = L / stations;
  std::vector<double> net(static_cast<size_t>(stations) + 1, 0.0);
  for (int i = 0; i <= stations; ++i) {
    double y = i * dy;
    d.y.push_back(y);
    d.weight.push_back(intensity(weights, y));
    d.buoyancy.push_back(intensity(buoyancy, y));
    if (i > 0) net[static_cast<size_t>(i)] = cell_load(weights, y - dy, y) - cell_load(buoyancy, y - dy, y);
  }
  integrate(d, net);
  return d;
}

void write_csv(std::ostream& out, const LoadDistribution& d) {
  out << "station,y,weight,buoyancy,shear,moment\n";
  for (size_t i = 0; i < d.y.size(); ++i)
    out << fmt::format("{},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g}\n", i, d.y[i], d.weight[i], d.buoyancy[i], d.shear[i],
                       d.moment[i]);
}

}  // namespace zevrpp::structures
