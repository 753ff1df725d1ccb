#include "zevrpp/propulsion/resistance.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

#include "zevrpp/hull/hydrostatics.hpp"

namespace zevrpp::propulsion {

using gp::Monomial;

double reynolds(double v, double L, const ResistanceCoefficients& c) { return v * L / c.nu; }

double froude(double v, double L, const ResistanceCoefficients& c) { return v / std::sqrt(c.g * L); }

double cf_ittc(double re, const ResistanceCoefficients& c) {
  double r = std::log10(re) - 2;
  if (!(r > 0)) throw std::domain_error("Reynolds number must exceed 100");
  return 75 * c.cf_scale / (r * r);
}

double cr_std(double fr, double cb, const ResistanceCoefficients& c) {
  double s = 0, cbi = 1;
  for (auto& row : c.omega) {
    s += cbi * (row[0] + row[1] * fr + row[2] * fr * fr);
    cbi *= cb;
  }
  return s;
}

double fr_crit(double cb, const ResistanceCoefficients& c) { return c.theta[0] + c.theta[1] * cb + c.theta[2] * cb * cb; }

double cr_frcrit(double fr, double cb, const ResistanceCoefficients& c) {
  double r = fr / fr_crit(cb, c);
  return std::max(1.0, std::pow(r, r));
}

double k_length(double L, const ResistanceCoefficients& c) { return c.psi1 * std::pow(L, c.psi2); }

namespace {

double shape_factor(double L, double B, double T, const ResistanceCoefficients& c) {
  return k_length(L, c) * std::pow(T / B, c.kappa[0]) * std::pow(B / L, c.kappa[1]) *
         std::pow(c.dp_over_t, c.kappa[2]) * std::pow(c.n_rudders, c.kappa[3]);
}

}  // namespace

double cr_total(double v, const HullState& h, const ResistanceCoefficients& c) {
  double fr = froude(v, h.L, c);
  return cr_std(fr, h.cb, c) * cr_frcrit(fr, h.cb, c) * shape_factor(h.L, h.B, h.T, c);
}

double friction_resistance(double v, const HullState& h, const ResistanceCoefficients& c) {
  return 0.5 * cf_ittc(reynolds(v, h.L, c), c) * c.rho_sw * v * v * h.area_s;
}

double residual_resistance(double v, const HullState& h, const ResistanceCoefficients& c) {
  return c.cr_scale * cr_total(v, h, c) * 0.5 * c.rho_sw * v * v * h.B * h.T;
}

double admiralty_power(double p_mcr, double disp, double disp_ref, double v, double v_max) {
  if (!(p_mcr > 0 && disp > 0 && disp_ref > 0 && v_max > 0)) throw std::invalid_argument("admiralty: reference values must be positive");
  return p_mcr * std::pow(disp / disp_ref, 2.0 / 3) * std::pow(v / v_max, 3);
}

fit::FitTable ResistanceFits::table() const {
  fit::FitTable t;
  t["cr_std"] = {cr_std, cr_lo, cr_hi};
  t["crcrit"] = {crcrit, rho_lo, rho_hi};
  return t;
}

ResistanceFits ResistanceFits::from_table(const fit::FitTable& t, const std::string& source) {
  ResistanceFits f;
  for (const char* key : {"cr_std", "crcrit"}) {
    auto it = t.find(key);
    if (it == t.end()) throw std::runtime_error(fmt::format("{}: missing fit [{}]", source, key));
    if (it->second.fit.a.cols() != 1) throw std::runtime_error(fmt::format("{} [{}]: expected a 1-D fit", source, key));
  }
  auto& a = t.at("cr_std");
  auto& b = t.at("crcrit");
  f.cr_std = a.fit;
  f.cr_lo = a.lo;
  f.cr_hi = a.hi;
  f.crcrit = b.fit;
  f.rho_lo = b.lo;
  f.rho_hi = b.hi;
  return f;
}

ResistanceFits build_resistance_fits(const ResistanceCoefficients& c, double beta, int samples) {
  const double cb = hull::block_coefficient(beta);
  ResistanceFits f;
  f.cr_lo = c.fr_lo;
  f.cr_hi = c.fr_hi;
  auto data = fit::FitData::sample_1d([&](double fr) { return cr_std(fr, cb, c); }, c.fr_lo, c.fr_hi, samples);
  for (int i = 0; i < data.size(); ++i)
    if (!std::isfinite(data.g[i]))
      throw std::runtime_error(fmt::format("C_R^std is not positive on Fr in [{}, {}]", c.fr_lo, c.fr_hi));
  f.cr_std = fit::fit_softmax_affine(data, 2);
  double fc = fr_crit(cb, c);
  f.rho_lo = std::min(1.0, c.fr_lo / fc) * 0.95;
  f.rho_hi = std::max(1.0, c.fr_hi / fc) * 1.05;
  auto rr = fit::FitData::sample_1d([](double r) { return std::pow(r, r); }, f.rho_lo, f.rho_hi, samples);
  fit::FitOptions opt;
  opt.alpha_seeds = {0.01, 0.03, 0.1, 1.0};
  f.crcrit = fit::fit_softmax_affine(rr, 2, opt);
  return f;
}

ResistanceFits load_resistance_fits(const std::string& path) { return ResistanceFits::from_table(fit::load_fits(path), path); }

LegResistance leg_resistance(gp::Problem& p, const hull::HullVars& h, const gp::Variable& area_s,
                             const gp::Variable& v, double beta, const ResistanceCoefficients& c,
                             const ResistanceFits& fits, const std::string& prefix) {
  const double cb = hull::block_coefficient(beta);
  LegResistance out;
  out.vars.v = v;
  out.vars.r_cf = p.add_var(prefix + "r_CF");
  out.vars.r_fr = p.add_var(prefix + "r_Fr");
  out.vars.c_frcrit = p.add_var(prefix + "C_R^Frcrit");
  const auto& x = out.vars;
  auto label = [&](gp::Constraint con, const std::string& name) {
    con.label = prefix + name;
    out.constraints.push_back(std::move(con));
  };

  Monomial re = Monomial(1 / c.nu) * Monomial(v) * Monomial(h.L);
  const double ln10 = std::log(10.0);
  label(gp::log_le(gp::Posynomial({Monomial(ln10) * Monomial(x.r_cf), Monomial(2 * ln10)}), re), "friction line");
  Monomial cf = Monomial(75 * c.cf_scale) * Monomial(x.r_cf).pow(-2);
  out.r_f = gp::Expr(Monomial(0.5 * c.rho_sw) * cf * Monomial(v).pow(2) * Monomial(area_s));

  out.froude = Monomial(1 / std::sqrt(c.g)) * Monomial(v) * Monomial(h.L).pow(-0.5);
  label(gp::mono_ge(out.froude, c.fr_lo), "Fr lower");
  label(gp::le(gp::Expr(out.froude), Monomial(c.fr_hi)), "Fr upper");

  Monomial rho = out.froude / Monomial(fr_crit(cb, c));
  auto crit = fit::PosynomialPowerFit::from_softmax(fits.crcrit);
  label(gp::le(gp::Expr(crit.posynomial({rho})), Monomial(x.r_fr).pow(crit.alpha_p)), "Frcrit fit");
  label(gp::mono_ge(Monomial(x.c_frcrit), 1.0), "Frcrit >= 1");
  label(gp::le(gp::Expr(Monomial(x.r_fr)), Monomial(x.c_frcrit)), "Frcrit >= r_Fr");

  Monomial shape = Monomial(c.psi1) * Monomial(h.L).pow(c.psi2) * (Monomial(h.T) / Monomial(h.B)).pow(c.kappa[0]) *
                   (Monomial(h.B) / Monomial(h.L)).pow(c.kappa[1]) *
                   Monomial(std::pow(c.dp_over_t, c.kappa[2]) * std::pow(c.n_rudders, c.kappa[3]));
  Monomial rest = Monomial(c.cr_scale * 0.5 * c.rho_sw) * shape * Monomial(x.c_frcrit) * Monomial(v).pow(2) *
                  Monomial(h.B) * Monomial(h.T);
  out.r_r = fits.cr_std.surrogate(std::vector<Monomial>{out.froude}) * rest;
  out.total = out.r_f + out.r_r;
  return out;
}

PowerChain power_chain(const gp::Expr& resistance, const gp::Variable& v, double eta_prop, double p_aux) {
  if (!(eta_prop > 0 && eta_prop <= 1)) throw std::invalid_argument("eta_prop must lie in (0, 1]");
  PowerChain pc;
  pc.shaft = resistance * Monomial(1 / eta_prop) * Monomial(v);
  pc.discharge = p_aux > 0 ? pc.shaft + gp::Expr(p_aux) : pc.shaft;
  return pc;
}

}  // namespace zevrpp::propulsion
