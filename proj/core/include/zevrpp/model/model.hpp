#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zevrpp/gp/problem.hpp"
#include "zevrpp/gp/solver.hpp"
#include "zevrpp/hull/constraints.hpp"
#include "zevrpp/model/scenario.hpp"
#include "zevrpp/network/network.hpp"
#include "zevrpp/propulsion/battery.hpp"
#include "zevrpp/propulsion/resistance.hpp"

namespace zevrpp::model {

inline const std::vector<std::string> kGroups = {"Operations",    "Hydrostatics", "Structures",
                                                 "Hydrodynamics", "Energy",       "Dimensions"};

inline const std::vector<std::string> kCostTerms = {"hotel crew", "deck crew", "battery", "hull and outfitting",
                                                    "berthing",   "electricity", "chargers"};

struct ModelFits {
  hull::StabilityFit stability;
  propulsion::ResistanceFits resistance;
};

// Loads the resistance fits from scenario.fits_path when set, otherwise fits them.
ModelFits build_fits(const Scenario& sc);

struct VesselVars {
  hull::HullVars h;
  gp::Variable l_sup, p_td, p_shaft_max, v_int, q;  // q: battery capacity, J
  hull::ArrangementVars arr;
  hull::WettedArea wet;    // A_S, arc to the waterline
  hull::WettedArea shell;  // external hull area, arc to the depth

  gp::Monomial cap_pax, cap_roro;
  gp::Expr steel, lightweight, deadweight, gross_tonnage;
};

struct LegModel {
  network::Arc leg;
  propulsion::LegResistance res;
  gp::Posynomial t_sea;
  gp::Expr shaft, discharge, energy;  // W, W, J
};

struct ServiceModel {
  size_t design = 0;
  gp::Variable n_v;
  propulsion::BatteryVars batt;
  std::vector<LegModel> legs;  // round-trip order
};

struct Assembly {
  Scenario scenario;
  gp::Problem problem;
  network::IndexSets sets;
  network::FlowVars flows;
  std::map<std::tuple<int, int, int>, double> alpha;
  double u_min = 0;
  std::vector<VesselVars> designs;
  std::vector<ServiceModel> services;
  std::map<int, gp::Variable> p_cha;  // W, per served port
  std::vector<std::pair<std::string, gp::Expr>> cost;  // EUR per year, nonzero kCostTerms only
  std::vector<std::string> warnings;

  std::map<std::string, size_t> group_census() const;
};

// Steel weight, t: rho_st sum N A p over the plate elements.
gp::Expr steel_weight(const VesselVars& v, const ModelParams& prm);

// 1565 dw_scale f_roro + (1 + freshwater) 170 (0.02 + 1.146 f_pax), t
gp::Expr deadweight(const gp::Monomial& cap_pax, const gp::Monomial& cap_roro, const ModelParams& prm);

// V_int (0.2 + 0.02 log10 V_hat (V_int / V_hat)^{1 / (log10(V_hat) ln 10)})
gp::Expr gross_tonnage(const gp::Monomial& v_int, const ModelParams& prm);
double gross_tonnage_exact(double v_int, const ModelParams& prm);
double gt_exponent(double v_hat);

// eta_cha P_cha_j t_cha_ij >= energy of the leg departing after arrival at j.
std::vector<gp::Constraint> port_energy_balance(const Assembly& a, size_t s);

// options.port_balance = false drops port_energy_balance (for demonstrations only).
struct AssembleOptions {
  bool port_balance = true;
};

Assembly assemble(const Scenario& sc, const ModelFits& fits, const AssembleOptions& opt = {});

struct LegReport {
  int from = 0, to = 0;
  double speed_kn = 0, froude = 0, t_sea_h = 0, t_port_h = 0, t_cha_h = 0;
  double resistance_kn = 0, shaft_mw = 0, energy_mwh = 0;
};

struct ServiceReport {
  std::string name;
  std::vector<int> ports;
  int n_rt = 0, n_vessel = 0;
  double L = 0, B = 0, T = 0, D = 0, L_sup = 0, p_td = 0;
  double v_int = 0, v_gt = 0, e_batt_mwh = 0, t_cell_years = 0, n_batt = 0;
  double cap_pax = 0, cap_roro = 0, lightweight = 0, deadweight = 0, steel = 0, p_shaft_max_mw = 0;
  std::vector<LegReport> legs;
};

struct FlowReport {
  int from = 0, to = 0;
  std::string cargo, service;
  double value = 0;
};

struct FleetSolution {
  std::string scenario, case_label, mode, status;
  std::vector<std::string> port_names;  // port i is port_names[i - 1]
  double objective = 0;
  std::vector<std::pair<std::string, double>> cost;
  std::vector<ServiceReport> services;
  std::map<int, double> charger_mw;
  std::vector<FlowReport> flows;
  double utility = 0, u_min = 0;
  double worst_violation = 0;
  std::string worst_constraint;
  long bnb_nodes = 0;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Check {
  std::string label;
  double violation;
};

// Every emitted constraint plus the exact forms the auxiliaries stand for,
// evaluated at x (indexed by VarId).
std::vector<Check> original_constraint_checks(const Assembly& a, const std::vector<double>& x);

// Throws ValidationError naming the worst constraint if any relative violation exceeds tol.
FleetSolution extract_and_validate(const Assembly& a, const gp::Solution& sol, double tol = 1e-6);

}  // namespace zevrpp::model
