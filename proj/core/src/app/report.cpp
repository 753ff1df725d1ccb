#include "zevrpp/app/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

using nlohmann::json;

namespace zevrpp::model {

void to_json(json& j, const LegReport& l) {
  j = {{"from", l.from},           {"to", l.to},           {"speed_kn", l.speed_kn},
       {"froude", l.froude},       {"t_sea_h", l.t_sea_h}, {"t_port_h", l.t_port_h},
       {"t_cha_h", l.t_cha_h},     {"resistance_kn", l.resistance_kn},
       {"shaft_mw", l.shaft_mw},   {"energy_mwh", l.energy_mwh}};
}

void from_json(const json& j, LegReport& l) {
  j.at("from").get_to(l.from);
  j.at("to").get_to(l.to);
  j.at("speed_kn").get_to(l.speed_kn);
  j.at("froude").get_to(l.froude);
  j.at("t_sea_h").get_to(l.t_sea_h);
  j.at("t_port_h").get_to(l.t_port_h);
  j.at("t_cha_h").get_to(l.t_cha_h);
  j.at("resistance_kn").get_to(l.resistance_kn);
  j.at("shaft_mw").get_to(l.shaft_mw);
  j.at("energy_mwh").get_to(l.energy_mwh);
}

#define ZEVRPP_SERVICE_FIELDS(X)                                                                          \
  X(name) X(ports) X(n_rt) X(n_vessel) X(L) X(B) X(T) X(D) X(L_sup) X(p_td) X(v_int) X(v_gt) X(e_batt_mwh) \
  X(t_cell_years) X(n_batt) X(cap_pax) X(cap_roro) X(lightweight) X(deadweight) X(steel) X(p_shaft_max_mw) X(legs)

void to_json(json& j, const ServiceReport& r) {
  j = json::object();
#define X(f) j[#f] = r.f;
  ZEVRPP_SERVICE_FIELDS(X)
#undef X
}

void from_json(const json& j, ServiceReport& r) {
#define X(f) j.at(#f).get_to(r.f);
  ZEVRPP_SERVICE_FIELDS(X)
#undef X
}

void to_json(json& j, const FlowReport& f) {
  j = {{"from", f.from}, {"to", f.to}, {"cargo", f.cargo}, {"service", f.service}, {"value", f.value}};
}

void from_json(const json& j, FlowReport& f) {
  j.at("from").get_to(f.from);
  j.at("to").get_to(f.to);
  j.at("cargo").get_to(f.cargo);
  j.at("service").get_to(f.service);
  j.at("value").get_to(f.value);
}

void to_json(json& j, const FleetSolution& s) {
  json cost = json::array(), chargers = json::array();
  for (auto& [name, v] : s.cost) cost.push_back({{"term", name}, {"eur_per_year", v}});
  for (auto& [port, mw] : s.charger_mw) chargers.push_back({{"port", port}, {"mw", mw}});
  j = {{"scenario", s.scenario},
       {"case", s.case_label},
       {"mode", s.mode},
       {"status", s.status},
       {"port_names", s.port_names},
       {"objective", s.objective},
       {"cost", cost},
       {"services", s.services},
       {"chargers", chargers},
       {"flows", s.flows},
       {"utility", s.utility},
       {"u_min", s.u_min},
       {"worst_violation", s.worst_violation},
       {"worst_constraint", s.worst_constraint},
       {"bnb_nodes", s.bnb_nodes}};
}

void from_json(const json& j, FleetSolution& s) {
  j.at("scenario").get_to(s.scenario);
  j.at("case").get_to(s.case_label);
  j.at("mode").get_to(s.mode);
  j.at("status").get_to(s.status);
  j.at("port_names").get_to(s.port_names);
  j.at("objective").get_to(s.objective);
  s.cost.clear();
  for (auto& c : j.at("cost")) s.cost.emplace_back(c.at("term").get<std::string>(), c.at("eur_per_year").get<double>());
  j.at("services").get_to(s.services);
  s.charger_mw.clear();
  for (auto& c : j.at("chargers")) s.charger_mw[c.at("port").get<int>()] = c.at("mw").get<double>();
  j.at("flows").get_to(s.flows);
  j.at("utility").get_to(s.utility);
  j.at("u_min").get_to(s.u_min);
  j.at("worst_violation").get_to(s.worst_violation);
  j.at("worst_constraint").get_to(s.worst_constraint);
  j.at("bnb_nodes").get_to(s.bnb_nodes);
}

}  // namespace zevrpp::model

namespace zevrpp::app {

using model::FleetSolution;

namespace {

template <class T>
T parse(const std::string& text) {
  try {
    return json::parse(text).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad solution json: ") + e.what());
  }
}

std::string num(double v) { return fmt::format("{:.6g}", v); }

std::string port_name(const FleetSolution& s, int port) {
  auto k = static_cast<size_t>(port - 1);
  return k < s.port_names.size() ? s.port_names[k] : std::to_string(port);
}

}  // namespace

std::string to_json(const FleetSolution& s) { return json(s).dump(2) + "\n"; }
FleetSolution from_json(const std::string& text) { return parse<FleetSolution>(text); }

std::string solutions_to_json(const std::vector<FleetSolution>& all) { return json(all).dump(2) + "\n"; }
std::vector<FleetSolution> solutions_from_json(const std::string& text) {
  return parse<std::vector<FleetSolution>>(text);
}

std::string design_csv(const std::vector<FleetSolution>& all) {
  std::string out = "case,service,n_rt,n_vessel,L_m,L_sup_m,V_GT,E_batt_MWh,t_cell_years\n";
  for (auto& s : all)
    for (auto& r : s.services)
      out += fmt::format("{},{},{},{},{},{},{},{},{}\n", s.case_label, r.name, r.n_rt, r.n_vessel, num(r.L),
                         num(r.L_sup), num(r.v_gt), num(r.e_batt_mwh), num(r.t_cell_years));
  return out;
}

std::string speed_pair(double out_kn, double in_kn) { return fmt::format("{:.1f} ({:.1f})", out_kn, in_kn); }

std::string speeds_csv(const std::vector<FleetSolution>& all) {
  std::string out = "case,service,leg,speed_kn\n";
  for (auto& s : all)
    for (auto& r : s.services) {
      std::map<std::pair<int, int>, double> v;
      for (auto& l : r.legs) v[{l.from, l.to}] = l.speed_kn;
      for (size_t k = 0; k + 1 < r.ports.size(); ++k) {
        int i = r.ports[k], j = r.ports[k + 1];
        out += fmt::format("{},{},{}-{},\"{}\"\n", s.case_label, r.name, i, j, speed_pair(v.at({i, j}), v.at({j, i})));
      }
    }
  return out;
}

std::string chargers_csv(const std::vector<FleetSolution>& all) {
  std::set<int> ports;
  for (auto& s : all)
    for (auto& [p, mw] : s.charger_mw) ports.insert(p);
  std::string out = "case";
  for (int p : ports) out += "," + (all.empty() ? std::to_string(p) : port_name(all.front(), p));
  out += "\n";
  for (auto& s : all) {
    out += s.case_label;
    for (int p : ports) {
      auto it = s.charger_mw.find(p);
      out += "," + (it == s.charger_mw.end() ? std::string() : fmt::format("{:.2f}", it->second));
    }
    out += "\n";
  }
  return out;
}

std::string costs_csv(const std::vector<FleetSolution>& all) {
  std::string out = "case,term,eur_per_year\n";
  for (auto& s : all) {
    for (auto& [name, v] : s.cost) out += fmt::format("{},{},{}\n", s.case_label, name, num(v));
    out += fmt::format("{},total,{}\n", s.case_label, num(s.objective));
  }
  return out;
}

std::string table_text(const std::vector<FleetSolution>& all) {
  std::string out;
  for (auto& s : all) {
    out += fmt::format("case {} ({}, {}): {}, cost {:.4g} MEUR/yr, utility {:.4f} (target {:.4f})\n",
                       s.case_label, s.scenario, s.mode, s.status, s.objective / 1e6, s.utility, s.u_min);
    out += fmt::format("  {:<12}{:>5}{:>6}{:>8}{:>8}{:>9}{:>10}{:>9}\n", "service", "N_rt", "N_v", "L", "L_sup",
                       "V_GT", "E_batt", "t_cell");
    for (auto& r : s.services)
      out += fmt::format("  {:<12}{:>5}{:>6}{:>8.1f}{:>8.1f}{:>9.0f}{:>10.1f}{:>9.1f}\n", r.name, r.n_rt,
                         r.n_vessel, r.L, r.L_sup, r.v_gt, r.e_batt_mwh, r.t_cell_years);
    out += "  speeds, kn (inbound in brackets)\n";
    for (auto& r : s.services) {
      std::map<std::pair<int, int>, double> v;
      for (auto& l : r.legs) v[{l.from, l.to}] = l.speed_kn;
      out += fmt::format("  {:<12}", r.name);
      for (size_t k = 0; k + 1 < r.ports.size(); ++k) {
        int i = r.ports[k], j = r.ports[k + 1];
        out += fmt::format("  {}-{}: {}", i, j, speed_pair(v.at({i, j}), v.at({j, i})));
      }
      out += "\n";
    }
    out += "  chargers, MW:";
    for (auto& [p, mw] : s.charger_mw) out += fmt::format("  {} {:.2f}", port_name(s, p), mw);
    out += "\n  cost, MEUR/yr:";
    for (auto& [name, v] : s.cost) out += fmt::format("  {} {:.3f}", name, v / 1e6);
    out += fmt::format("\n  worst violation {:.2e} ({}), {} nodes\n\n", s.worst_violation, s.worst_constraint,
                       s.bnb_nodes);
  }
  return out;
}

void check_report(const FleetSolution& s) {
  auto bad = [&](const std::string& what) {
    throw std::invalid_argument(fmt::format("case {}: {}", s.case_label, what));
  };
  auto finite = [&](double v, const std::string& what) {
    if (!std::isfinite(v)) bad(what + " is not finite");
  };
  finite(s.objective, "objective");
  double total = 0;
  for (auto& [name, v] : s.cost) {
    finite(v, name);
    if (v < 0) bad(name + " is negative");
    total += v;
  }
  if (std::abs(total - s.objective) > 1e-9 * std::abs(s.objective)) bad("cost terms do not sum to the objective");
  for (auto& r : s.services) {
    if (r.n_rt < 1 || r.n_vessel < 1) bad(r.name + ": counts must be positive");
    for (double v : {r.L, r.B, r.T, r.D, r.L_sup, r.v_gt, r.e_batt_mwh, r.t_cell_years})
      if (!(v > 0) || !std::isfinite(v)) bad(r.name + ": non-positive design value");
    if (r.legs.size() != 2 * (r.ports.size() - 1)) bad(r.name + ": leg count does not match the route");
    for (auto& l : r.legs) finite(l.speed_kn, r.name + " speed");
  }
  for (auto& [p, mw] : s.charger_mw) finite(mw, "charger power");
}

std::string sweep_csv(const std::string& param, const std::vector<SweepPoint>& points) {
  // key variables follow the first solved point's services
  std::vector<std::string> names;
  for (auto& p : points)
    if (p.outcome.fleet) {
      for (auto& r : p.outcome.fleet->services) names.push_back(r.name);
      break;
    }
  std::string out = fmt::format("{},status,objective", param);
  std::vector<std::string> terms;
  for (auto& p : points)
    if (p.outcome.fleet) {
      for (auto& [name, v] : p.outcome.fleet->cost) terms.push_back(name);
      break;
    }
  for (auto& t : terms) out += "," + t;
  for (auto& n : names) out += fmt::format(",{0}_n_rt,{0}_n_vessel,{0}_L,{0}_E_batt_MWh", n);
  out += ",error\n";
  for (auto& p : points) {
    const auto& o = p.outcome;
    std::string status = o.code == kValidationFailure ? "ValidationFailure"
                         : o.code == kInputError      ? "InputError"
                                                      : gp::to_string(o.status);
    out += fmt::format("{},{}", num(p.value), status);
    if (o.fleet) {
      out += "," + num(o.fleet->objective);
      for (auto& [name, v] : o.fleet->cost) out += "," + num(v);
      for (auto& r : o.fleet->services)
        out += fmt::format(",{},{},{},{}", r.n_rt, r.n_vessel, num(r.L), num(r.e_batt_mwh));
    } else {
      out += "," + std::string(terms.size() + 4 * names.size(), ',');
    }
    std::string err = o.error;
    for (size_t k = 0; (k = err.find('"', k)) != std::string::npos; k += 2) err.insert(k, "\"");
    out += err.empty() ? ",\n" : ",\"" + err + "\"\n";
  }
  return out;
}

}  // namespace zevrpp::app
