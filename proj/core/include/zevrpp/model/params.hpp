#pragma once

#include <string>
#include <vector>

namespace zevrpp::model {

// Scalar model constants. Units: m, s, t (weights), EUR; energies in MWh and
// powers in MW where noted. Per-port and per-cargo values live in Scenario.
struct ModelParams {
  // hull and arrangement
  double beta = 6.0;
  double n_rooms = 3;
  double n_sup = 3;          // superstructure decks
  double h_sup = 3.0;        // m per superstructure deck
  double phi_pax = 5000;     // m^2 per thousand passengers
  double phi_roro = 3000;    // m^2 per thousand lane-metres
  double phi_a = 0.75;       // wetted area correction
  double c_int_b = 0.8;      // internal volume block coefficient
  double kg_ratio = 0.75;    // KG / D
  double eps_gm = 0.5;       // m
  double h_batt_min = 2.5;
  double h_roro_min = 5.0;
  double floor_fraction = 0.1;

  // structures
  double sigma_perm = 175;   // MPa
  double tau_perm = 110;

  // weights
  double rho_st = 7.85;      // t/m^3
  double p_sup = 0.008;      // m
  double rho_mass = 10;      // t/MWh
  double rho_vol = 10;       // m^3/MWh
  double rho_mot = 4;        // t/MW
  double dw_roro = 1565;     // t per thousand lane-metres
  double dw_pax_base = 0.02;
  double dw_pax_rate = 1.146;
  double dw_pax_weight = 170;
  double freshwater = 1;     // 1 keeps the printed freshwater term, 0 drops it
  double dw_scale = 1;
  double outfit_l = 0.3;
  double outfit_sup_exp = 3.1;
  double outfit_sup_div = 1e5;

  // propulsion and energy
  double eta_prop = 0.7;
  double p_aux = 1.0;        // MW
  double acc_plus = 0.03;    // m/s^2
  double acc_minus = 0.03;
  double theta = 2;
  double eta_dis = 0.95;
  double eta_cha = 0.95;
  double t_ph = 48;          // h
  double t_life = 30;        // years

  // costs
  double c_hotel = 4.5e7;    // EUR per thousand passengers of capacity over the lifetime
  double c_deck = 6e7;       // EUR per vessel over the lifetime
  double c_batt = 3e5;       // EUR/MWh
  double k_batt = 1;
  double c_steel = 15000;    // EUR/t
  double c_cha = 3e5;        // EUR/MW
  double v_hat = 1e5;        // m^3, GT expansion point
  double gt_base = 0.2;
  double gt_log = 0.02;

  // operations
  double n_rt_max = 16;
  double n_v_max = 16;
  double theta_u = 0.9;
  double demand_scale = 1;
  double route_fraction = 1; // t_route = route_fraction * t_ph

  double periods_per_year() const { return 8760.0 / t_ph; }
};

struct ParamSpec {
  const char* name;
  double ModelParams::*field;
  const char* provenance;  // published | assumed
  const char* unit;
};

const std::vector<ParamSpec>& param_specs();
const ParamSpec* find_param(const std::string& name);

// Throws std::out_of_range naming the parameter if it does not exist.
double& param_ref(ModelParams& p, const std::string& name);
double param_value(const ModelParams& p, const std::string& name);

// [params] section listing every value with its provenance and unit.
std::string params_ini(const ModelParams& p);

}  // namespace zevrpp::model
