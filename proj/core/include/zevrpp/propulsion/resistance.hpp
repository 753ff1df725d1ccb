#pragma once

#include <string>
#include <vector>

#include "zevrpp/fit/fit_io.hpp"
#include "zevrpp/fit/softmax_affine.hpp"
#include "zevrpp/gp/problem.hpp"
#include "zevrpp/hull/constraints.hpp"
#include "zevrpp/propulsion/coefficients.hpp"

namespace zevrpp::propulsion {

// Direct evaluators
double reynolds(double v, double L, const ResistanceCoefficients& c);
double froude(double v, double L, const ResistanceCoefficients& c);
double cf_ittc(double re, const ResistanceCoefficients& c);  // scaled, dimensionless
double cr_std(double fr, double cb, const ResistanceCoefficients& c);
double fr_crit(double cb, const ResistanceCoefficients& c);
double cr_frcrit(double fr, double cb, const ResistanceCoefficients& c);
double k_length(double L, const ResistanceCoefficients& c);

struct HullState {
  double L, B, T, area_s, cb;
};

double cr_total(double v, const HullState& h, const ResistanceCoefficients& c);
double friction_resistance(double v, const HullState& h, const ResistanceCoefficients& c);
double residual_resistance(double v, const HullState& h, const ResistanceCoefficients& c);

// P_MCR (disp / disp_ref)^{2/3} (v / v_max)^3
double admiralty_power(double p_mcr, double disp, double disp_ref, double v, double v_max);

// Surrogates: C_R^std in Fr, and rho^rho (rho = Fr / Fr_crit) as a posynomial power.
struct ResistanceFits {
  fit::SoftmaxAffineFit cr_std;
  double cr_lo = 0, cr_hi = 0;
  fit::SoftmaxAffineFit crcrit;
  double rho_lo = 0, rho_hi = 0;

  fit::FitTable table() const;
  static ResistanceFits from_table(const fit::FitTable& t, const std::string& source);
};

ResistanceFits build_resistance_fits(const ResistanceCoefficients& c, double beta, int samples = 400);
ResistanceFits load_resistance_fits(const std::string& path);

struct LegVars {
  gp::Variable v, r_cf, r_fr, c_frcrit;
};

struct LegResistance {
  LegVars vars;
  gp::Monomial froude;
  gp::Expr r_f, r_r, total;
  std::vector<gp::Constraint> constraints;
};

// Friction pair r_CF + 2 <= log10 Re (log-space affine) and C_F = 75/r_CF^2,
// residual C_R with the C_R^std surrogate and C_R^Frcrit >= max{1, r_Fr},
// and the Froude validity range of the surrogate.
LegResistance leg_resistance(gp::Problem& p, const hull::HullVars& h, const gp::Variable& area_s,
                             const gp::Variable& v, double beta, const ResistanceCoefficients& c,
                             const ResistanceFits& fits, const std::string& prefix);

struct PowerChain {
  gp::Expr shaft;
  gp::Expr discharge;
};

// P_shaft = R v / eta_prop, b = P_shaft + P_aux
PowerChain power_chain(const gp::Expr& resistance, const gp::Variable& v, double eta_prop, double p_aux);

}  // namespace zevrpp::propulsion
