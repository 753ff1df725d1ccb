#pragma once

#include <iosfwd>
#include <vector>

#include "zevrpp/gp/problem.hpp"
#include "zevrpp/hull/hydrostatics.hpp"

namespace zevrpp::structures {

// Midship girder with thickness ratios tied to the top deck plate p_td.
struct SectionMonomials {
  gp::Monomial p_sp, p_bh, p_bp;
  gp::Monomial z_na;     // 2D/5
  gp::Monomial inertia;  // 133/150 p_td B D^2
  gp::Monomial z_deck;   // 5 I / (3 D)
};

SectionMonomials section_properties(const gp::Variable& B, const gp::Variable& D, const gp::Variable& p_td);

struct SectionValues {
  double p_sp, z_na, inertia, z_deck;
};

SectionValues section_values(double B, double D, double p_td);

// |q_E| per unit shear force: 53 B D p_td / (200 I).
gp::Monomial shear_flow_max(const gp::Variable& B, const gp::Variable& D, const gp::Variable& p_td);
double shear_flow_max(double B, double D, double p_td);

struct LoadParams {
  double c_sw = 0.0472;
  double c_wv = 0.975;
  double phi_sag = -1.1;
  double phi_v = 1.0;   // |phi_V| at y = 0.3 L
  double c_vwv = 0.3;
};

double phi_hog(double cb);
// max(|sag|, |hog|) factor of the wave moment.
double wave_moment_factor(double cb, const LoadParams& prm = {});
double stillwater_moment(double L, double B, double cb, const LoadParams& prm = {});
double design_moment(double L, double B, double cb, const LoadParams& prm = {});
// |V_sw(0.3L)| + |V_wv(0.3L)|, with M_sw(y) parabolic so V_sw(0.3L) = 1.6 M_sw / L.
double design_shear(double L, double B, double cb, const LoadParams& prm = {});

struct DesignLoads {
  gp::Monomial m_des;
  gp::Monomial v_des;
};

DesignLoads design_loads(const gp::Variable& L, const gp::Variable& B, double cb, const LoadParams& prm = {});

struct StrengthParams {
  double sigma_perm = 175.0;
  double tau_perm = 110.0;
  double unit_scale = 1e-3;  // kN/m^2 to MPa
  LoadParams loads;
};

// M_des / Z_deck <= sigma_perm, |q_E| V_des / p_sp <= tau_perm
std::vector<gp::Constraint> strength_constraints(const gp::Variable& L, const gp::Variable& B,
                                                 const gp::Variable& D, const gp::Variable& p_td, double cb,
                                                 const StrengthParams& prm = {});

struct WeightBlock {
  double weight;  // total, uniformly spread over [start, end] from the forward perpendicular
  double start;
  double end;
};

struct LoadDistribution {
  std::vector<double> y, weight, buoyancy, shear, moment;
};

// Cumulative V_sw and M_sw over equal stations. Block loads are integrated
// exactly per cell, hull buoyancy (rho times submerged section area) and the
// moment by trapezoid. Throws if |V(L)| or |M(L)| exceeds 1% of the maximum.
// follows_buoyancy is extra weight spread in proportion to the section area.
LoadDistribution stillwater_distribution(const hull::HullParams& h, const std::vector<WeightBlock>& blocks,
                                         double rho = 1.025, int stations = 400, double follows_buoyancy = 0);
// Beam with block buoyancy instead of a hull.
LoadDistribution stillwater_distribution(double L, const std::vector<WeightBlock>& weights,
                                         const std::vector<WeightBlock>& buoyancy, int stations = 400);

double section_area(double y, const hull::HullParams& h);

void write_csv(std::ostream& out, const LoadDistribution& d);

}  // namespace zevrpp::structures
