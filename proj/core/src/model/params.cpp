#include "zevrpp/model/params.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace zevrpp::model {

#define P(name, prov, unit) ParamSpec{#name, &ModelParams::name, prov, unit}

const std::vector<ParamSpec>& param_specs() {
  static const std::vector<ParamSpec> specs = {
      P(beta, "published", "-"),
      P(n_rooms, "published", "-"),
      P(n_sup, "assumed", "-"),
      P(h_sup, "assumed", "m"),
      P(phi_pax, "assumed", "m2/kpax"),
      P(phi_roro, "assumed", "m2/klm"),
      P(phi_a, "assumed", "-"),
      P(c_int_b, "assumed", "-"),
      P(kg_ratio, "assumed", "-"),
      P(eps_gm, "assumed", "m"),
      P(h_batt_min, "assumed", "m"),
      P(h_roro_min, "assumed", "m"),
      P(floor_fraction, "published", "-"),
      P(sigma_perm, "assumed", "MPa"),
      P(tau_perm, "assumed", "MPa"),
      P(rho_st, "assumed", "t/m3"),
      P(p_sup, "assumed", "m"),
      P(rho_mass, "assumed", "t/MWh"),
      P(rho_vol, "assumed", "m3/MWh"),
      P(rho_mot, "assumed", "t/MW"),
      P(dw_roro, "published", "t/klm"),
      P(dw_pax_base, "published", "-"),
      P(dw_pax_rate, "published", "-"),
      P(dw_pax_weight, "published", "t"),
      P(freshwater, "published", "flag"),
      P(dw_scale, "assumed", "-"),
      P(outfit_l, "published", "t/m2"),
      P(outfit_sup_exp, "published", "-"),
      P(outfit_sup_div, "published", "-"),
      P(eta_prop, "assumed", "-"),
      P(p_aux, "assumed", "MW"),
      P(acc_plus, "assumed", "m/s2"),
      P(acc_minus, "assumed", "m/s2"),
      P(theta, "published", "-"),
      P(eta_dis, "assumed", "-"),
      P(eta_cha, "assumed", "-"),
      P(t_ph, "published", "h"),
      P(t_life, "assumed", "a"),
      P(c_hotel, "assumed", "EUR/kpax"),
      P(c_deck, "assumed", "EUR"),
      P(c_batt, "assumed", "EUR/MWh"),
      P(k_batt, "assumed", "-"),
      P(c_steel, "assumed", "EUR/t"),
      P(c_cha, "assumed", "EUR/MW"),
      P(v_hat, "published", "m3"),
      P(gt_base, "published", "-"),
      P(gt_log, "published", "-"),
      P(n_rt_max, "assumed", "-"),
      P(n_v_max, "assumed", "-"),
      P(theta_u, "assumed", "-"),
      P(demand_scale, "assumed", "-"),
      P(route_fraction, "assumed", "-"),
  };
  return specs;
}

#undef P

const ParamSpec* find_param(const std::string& name) {
  for (auto& s : param_specs())
    if (name == s.name) return &s;
  return nullptr;
}

double& param_ref(ModelParams& p, const std::string& name) {
  auto* s = find_param(name);
  if (!s) throw std::out_of_range("unknown parameter '" + name + "'");
  return p.*(s->field);
}

double param_value(const ModelParams& p, const std::string& name) {
  auto* s = find_param(name);
  if (!s) throw std::out_of_range("unknown parameter '" + name + "'");
  return p.*(s->field);
}

std::string params_ini(const ModelParams& p) {
  std::string out = "; Model parameter defaults: value ; provenance, unit\n\n[params]\n";
  for (auto& s : param_specs())
    out += fmt::format("{} = {} ; {}, {}\n", s.name, p.*(s.field), s.provenance, s.unit);
  return out;
}

}  // namespace zevrpp::model
