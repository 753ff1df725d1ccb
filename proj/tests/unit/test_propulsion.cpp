#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "zevrpp/gp/logspace.hpp"
#include "zevrpp/gp/solver.hpp"
#include "zevrpp/hull/hydrostatics.hpp"
#include "zevrpp/oracles/convexity.hpp"
#include "zevrpp/propulsion/battery.hpp"
#include "zevrpp/propulsion/resistance.hpp"

using namespace zevrpp;
using namespace zevrpp::propulsion;
using gp::Monomial;

namespace {

const ResistanceFits& fits6() {
  static const ResistanceFits f = build_resistance_fits(ResistanceCoefficients{}, 6);
  return f;
}

std::string data(const std::string& rel) { return std::string(ZEVRPP_DATA_DIR) + "/" + rel; }

}  // namespace

TEST(Friction, IttcLine) {
  ResistanceCoefficients c;
  EXPECT_NEAR(cf_ittc(1e9, c) / c.cf_scale, 75.0 / 49, 1e-12);
  EXPECT_NEAR(75.0 / 49, 1.5306, 1e-4);
  EXPECT_THROW(cf_ittc(100, c), std::domain_error);
  HullState h{150, 25, 6, 4000, 0.62};
  double r1 = friction_resistance(8, h, c);
  h.area_s *= 2;
  EXPECT_NEAR(friction_resistance(8, h, c), 2 * r1, 1e-9 * r1);
}

TEST(Friction, LogSpaceLineBoundary) {
  ResistanceCoefficients c;
  gp::Problem p;
  auto hv = hull::add_hull_vars(p, "");
  auto A = p.add_var("A_S"), v = p.add_var("v");
  auto leg = leg_resistance(p, hv, A, v, 6, c, fits6(), "");
  auto& line = leg.constraints.front();
  ASSERT_EQ(line.form, gp::ConstraintForm::LogLE);
  std::vector<double> x(p.num_vars(), 1.0);
  x[hv.L.id] = 100;
  x[v.id] = 1e9 * c.nu / 100;  // Re = 1e9
  x[leg.vars.r_cf.id] = 7;
  EXPECT_LE(gp::violation(line, x), 1e-12);
  x[leg.vars.r_cf.id] = 7.01;
  EXPECT_GT(gp::violation(line, x), 1e-4);
  x[v.id] = 100 * c.nu / 100;  // Re = 100 leaves no room for r_CF > 0
  x[leg.vars.r_cf.id] = 1e-9;
  EXPECT_GT(gp::violation(line, x), 0.0);
}

TEST(Residual, Pieces) {
  ResistanceCoefficients c;
  double cb = hull::block_coefficient(6);
  EXPECT_NEAR(fr_crit(cb, c), 0.854 - 1.228 * cb + 0.497 * cb * cb, 1e-15);
  EXPECT_DOUBLE_EQ(cr_frcrit(0.2, cb, c), 1.0);
  double r = 0.34 / fr_crit(cb, c);
  EXPECT_NEAR(cr_frcrit(0.34, cb, c), std::pow(r, r), 1e-14);
  EXPECT_NEAR(k_length(150, c), 2.1701 * std::pow(150, -0.1602), 1e-14);
  // omega2 + C_B omega5 + C_B^2 omega8 < 0 rules out a direct posynomial
  EXPECT_LT(c.omega[0][1] + cb * c.omega[1][1] + cb * cb * c.omega[2][1], 0);
}

TEST(Residual, SurrogateFitQuality) {
  auto& f = fits6();
  EXPECT_EQ(f.cr_std.K, 2);
  EXPECT_LT(f.cr_std.rmse_log, 1e-3);
  EXPECT_LT(f.crcrit.rmse_log, 1e-4);
  ResistanceCoefficients c;
  double cb = hull::block_coefficient(6);
  EXPECT_LE(f.rho_lo, c.fr_lo / fr_crit(cb, c));
  EXPECT_GE(f.rho_hi, c.fr_hi / fr_crit(cb, c));
  // independent dense check of the stored rmse
  double s = 0;
  const int n = 5000;
  for (int i = 0; i < n; ++i) {
    double fr = c.fr_lo + (c.fr_hi - c.fr_lo) * i / (n - 1);
    double d = std::log(f.cr_std.eval({fr})) - std::log(cr_std(fr, cb, c));
    s += d * d;
  }
  EXPECT_LT(std::sqrt(s / n), 1e-3);
}

TEST(Residual, FitTableRoundTrip) {
  auto path = testing::TempDir() + "/fits.ini";
  fit::save_fits(path, fits6().table());
  auto back = load_resistance_fits(path);
  EXPECT_NEAR(back.cr_std.eval({0.3}), fits6().cr_std.eval({0.3}), 1e-14);
  EXPECT_NEAR(back.crcrit.eval({1.2}), fits6().crcrit.eval({1.2}), 1e-14);
  fit::FitTable partial;
  partial["cr_std"] = fits6().table().at("cr_std");
  fit::save_fits(path, partial);
  try {
    load_resistance_fits(path);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("crcrit"), std::string::npos);
  }
}

TEST(Residual, ConstraintsTrackDirectEvaluation) {
  ResistanceCoefficients c;
  const double beta = 6, cb = hull::block_coefficient(beta);
  gp::Problem p;
  auto hv = hull::add_hull_vars(p, "");
  auto A = p.add_var("A_S"), v = p.add_var("v");
  auto leg = leg_resistance(p, hv, A, v, beta, c, fits6(), "");
  HullState h{160, 26, 6.5, 4200, cb};
  auto crit = fit::PosynomialPowerFit::from_softmax(fits6().crcrit);
  for (double fr : {0.16, 0.22, 0.28, 0.33, 0.37}) {
    double vel = fr * std::sqrt(c.g * h.L);
    std::vector<double> x(p.num_vars(), 1.0);
    x[hv.L.id] = h.L;
    x[hv.B.id] = h.B;
    x[hv.T.id] = h.T;
    x[A.id] = h.area_s;
    x[v.id] = vel;
    x[leg.vars.r_cf.id] = std::log10(reynolds(vel, h.L, c)) - 2;
    double rfr = crit.eval({fr / fr_crit(cb, c)});
    x[leg.vars.r_fr.id] = rfr;
    x[leg.vars.c_frcrit.id] = std::max(1.0, rfr);
    for (auto& con : leg.constraints) EXPECT_LE(gp::violation(con, x), 1e-9) << con.label;
    auto a = gp::to_assignment(x);
    double rf = friction_resistance(vel, h, c), rr = residual_resistance(vel, h, c);
    EXPECT_NEAR(gp::evaluate(leg.r_f, a), rf, 1e-9 * rf);
    EXPECT_NEAR(gp::evaluate(leg.r_r, a), rr, 5e-3 * rr) << fr;
  }
}

TEST(Residual, FroudeRangeIsEnforced) {
  ResistanceCoefficients c;
  gp::Problem p;
  auto hv = hull::add_hull_vars(p, "");
  auto A = p.add_var("A_S"), v = p.add_var("v");
  auto leg = leg_resistance(p, hv, A, v, 6, c, fits6(), "");
  std::vector<double> x(p.num_vars(), 1.0);
  x[hv.L.id] = 100;
  x[v.id] = 0.1 * std::sqrt(c.g * 100);
  bool lower = false;
  for (auto& con : leg.constraints)
    if (con.label == "Fr lower") lower = gp::violation(con, x) > 0;
  EXPECT_TRUE(lower);
}

TEST(Power, Chain) {
  gp::Problem p;
  auto v = p.add_var("v");
  auto pc = power_chain(gp::Expr(1e6), v, 0.7, 0.0);
  EXPECT_NEAR(gp::evaluate(pc.shaft, {{v.id, 10}}), 1.4286e7, 1e3);
  EXPECT_DOUBLE_EQ(gp::evaluate(pc.discharge, {{v.id, 10}}), gp::evaluate(pc.shaft, {{v.id, 10}}));
  auto pa = power_chain(gp::Expr(1e6), v, 0.7, 5e5);
  EXPECT_NEAR(gp::evaluate(pa.discharge, {{v.id, 10}}), 1e7 / 0.7 + 5e5, 1e-3);
  EXPECT_THROW(power_chain(gp::Expr(1.0), v, 0.0, 0), std::invalid_argument);
  // R ~ v^2 at fixed coefficients gives P ~ v^3
  auto cubic = power_chain(gp::Expr(Monomial(3.0) * Monomial(v).pow(2)), v, 0.6, 0);
  auto g = gp::gradient(cubic.shaft, {{v.id, std::log(7.0)}});
  EXPECT_NEAR(g.at(v.id), 3.0, 1e-12);
}

TEST(Power, Admiralty) {
  EXPECT_DOUBLE_EQ(admiralty_power(5e6, 1e4, 1e4, 10, 10), 5e6);
  EXPECT_NEAR(admiralty_power(5e6, 1e4, 1e4, 5, 10), 5e6 / 8, 1e-6);
  EXPECT_NEAR(admiralty_power(5e6, 8e4, 1e4, 10, 10), 4 * 5e6, 1e-6);
  EXPECT_THROW(admiralty_power(0, 1, 1, 1, 1), std::invalid_argument);
}

TEST(Battery, CapacityAndLifetime) {
  gp::Problem p;
  auto bv = add_battery_vars(p, "");
  auto nrt = p.add_var("N_rt", gp::VarKind::Integer, 1, 10);
  auto e = p.add_var("E");
  BatteryParams prm;
  auto b = battery_constraints(bv, {gp::Expr(e)}, Monomial(nrt), prm, "");
  EXPECT_TRUE(b.warnings.empty());
  ASSERT_EQ(b.constraints.size(), 5u);
  std::vector<double> x(p.num_vars(), 1.0);
  x[e.id] = 3.6e9;
  x[bv.q.id] = prm.theta / prm.eta_dis * 3.6e9;
  EXPECT_LE(gp::violation(b.constraints[0], x), 1e-12);
  x[bv.q.id] *= 0.99;
  EXPECT_GT(gp::violation(b.constraints[0], x), 0);
  // t_life N_ph / N_life = 0.5 leaves N_batt >= 1 binding
  x[bv.n_life.id] = 2 * prm.t_life_years * prm.periods_per_year();
  x[bv.n_batt.id] = 1.0;
  EXPECT_LE(gp::violation(b.constraints[3], x), 0);
  EXPECT_LE(gp::violation(b.constraints[4], x), 0);
  x[bv.n_batt.id] = 0.9;
  EXPECT_GT(gp::violation(b.constraints[3], x), 0);
  // a battery lasting 10 of 30 years needs three over the vessel life
  x[bv.n_life.id] = 10 * prm.periods_per_year();
  x[bv.n_batt.id] = 3.0;
  EXPECT_NEAR(gp::evaluate(b.constraints[4].expr, gp::to_assignment(x)), 1.0, 1e-12);
  prm.theta = 1.5;
  EXPECT_EQ(battery_constraints(bv, {gp::Expr(e)}, Monomial(nrt), prm, "").warnings.size(), 1u);
  EXPECT_THROW(battery_constraints(bv, {}, Monomial(nrt), prm, ""), std::invalid_argument);
}

TEST(Battery, LossInequalityMatchesEvaluator) {
  gp::Problem p;
  auto bv = add_battery_vars(p, "");
  auto nrt = p.add_var("N_rt", gp::VarKind::Integer, 1, 10);
  auto e = p.add_var("E");
  BatteryParams prm;
  auto b = battery_constraints(bv, {gp::Expr(e)}, Monomial(nrt), prm, "");
  std::vector<double> x(p.num_vars(), 1.0);
  x[nrt.id] = 3;
  x[bv.r_dis.id] = 2.3 * 3600 * 0.8;  // 0.8 of the cell capacity per round trip
  x[bv.n_life.id] = 400;
  double loss = capacity_loss_from_solution(x[bv.r_dis.id], 3, 400, prm);
  auto a = gp::to_assignment(x);
  EXPECT_NEAR(gp::evaluate(b.constraints[2].expr, a) * prm.deg.phi_max, loss, 1e-9 * loss);
  // same number from the profile evaluator: constant current over the horizon
  double hours = 400 * prm.t_ph_hours;
  double amps = 2 * 3 * x[bv.r_dis.id] / (prm.t_ph_hours * 3600);
  EXPECT_NEAR(capacity_loss({{prm.t_ph_hours, amps}}, prm.deg, hours), loss, 1e-9 * loss);
}

TEST(Battery, ConstraintsAreLogConvex) {
  std::mt19937_64 rng(5);
  gp::Problem p;
  auto hv = hull::add_hull_vars(p, "");
  auto A = p.add_var("A_S"), v = p.add_var("v"), w = p.add_var("w");
  auto leg = leg_resistance(p, hv, A, v, 6, ResistanceCoefficients{}, fits6(), "");
  auto pc = power_chain(leg.total, v, 0.7, 1e6);
  auto bv = add_battery_vars(p, "");
  auto nrt = p.add_var("N_rt", gp::VarKind::Integer, 1, 10);
  auto t_sea = Monomial(5e4) / Monomial(v);
  auto b = battery_constraints(bv, {pc.discharge * t_sea, gp::Expr(Monomial(w))}, Monomial(nrt), {}, "");
  auto cs = leg.constraints;
  cs.insert(cs.end(), b.constraints.begin(), b.constraints.end());
  for (auto& c : cs) {
    auto r = oracles::sample_convexity(c, rng, 1000);
    EXPECT_LE(r.worst, 1e-10) << c.label;
  }
}

TEST(Degradation, Profiles) {
  DegradationParams d;
  EXPECT_EQ(capacity_loss({{24, 0.0}}, d, 1000), 0.0);
  auto three = daily_cycles(3, 1.0, 0.8, d), six = daily_cycles(6, 1.0, 0.8, d);
  for (double t : {24.0, 240.0, 2400.0, 24000.0}) EXPECT_GT(capacity_loss(six, d, t), capacity_loss(three, d, t));
  // nondecreasing at whole periods
  double prev = 0;
  for (int day = 1; day <= 400; ++day) {
    double phi = capacity_loss(three, d, 24.0 * day);
    EXPECT_GE(phi, prev);
    prev = phi;
  }
  EXPECT_THROW(daily_cycles(12, 0.5, 0.9, d), std::invalid_argument);
}

TEST(Degradation, RateTermRatio) {
  DegradationParams d;
  std::vector<CurrentSegment> prof{{1.0, 2.3}};  // 1C constant
  double base = capacity_loss(prof, d, 100);
  DegradationParams d2 = d;
  d2.chi4 *= 2;
  double rate = 1.0;
  EXPECT_NEAR(capacity_loss(prof, d2, 100) / base, std::exp(d.chi4 * rate / (d.r_g * d.t_cell)), 1e-12);
}

TEST(Coefficients, ShippedFilesMatchDefaults) {
  auto c = load_resistance(data("coefficients/resistance.ini"));
  ResistanceCoefficients ref;
  EXPECT_EQ(c.omega, ref.omega);
  EXPECT_EQ(c.theta, ref.theta);
  EXPECT_EQ(c.kappa, ref.kappa);
  EXPECT_DOUBLE_EQ(c.fr_lo, ref.fr_lo);
  auto d = load_degradation(data("coefficients/degradation.ini"));
  EXPECT_DOUBLE_EQ(d.chi1, 0.57);
  EXPECT_DOUBLE_EQ(d.e_a, 31500);
}

TEST(Coefficients, ErrorsAreLocated) {
  auto path = testing::TempDir() + "/bad_resistance.ini";
  {
    std::ofstream out(path);
    out << "[resistance]\nomega0 = 1 2 3\nomega1 = 1 2\nomega2 = 1 2 3\ntheta = 1 2 3\nkappa = 1 2 3 4\n";
  }
  try {
    load_resistance(path);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("[resistance] omega1"), std::string::npos) << e.what();
  }
  {
    std::ofstream out(path);
    out << "[degradation]\nchi1 = 0.5x\n";
  }
  try {
    load_degradation(path);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("[degradation] chi1: bad number '0.5x'"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_resistance(testing::TempDir() + "/nope.ini"), std::runtime_error);
}
