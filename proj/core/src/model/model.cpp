#include "zevrpp/model/model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "zevrpp/hull/hydrostatics.hpp"
#include "zevrpp/structures/girder.hpp"

namespace zevrpp::model {

using gp::Expr;
using gp::Monomial;
using gp::Variable;

namespace {

constexpr double kJoulePerMWh = 3.6e9;
constexpr double kKnot = 1852.0 / 3600.0;

Monomial M(const Variable& v) { return Monomial(v); }
Monomial M(double c) { return Monomial(c); }

}  // namespace

ModelFits build_fits(const Scenario& sc) {
  ModelFits f;
  f.stability = hull::fit_stability(sc.prm.beta);
  f.resistance = sc.fits_path.empty() ? propulsion::build_resistance_fits(sc.resistance, sc.prm.beta)
                                      : propulsion::load_resistance_fits(sc.fits_path);
  return f;
}

std::map<std::string, size_t> Assembly::group_census() const {
  std::map<std::string, size_t> out;
  for (auto& c : problem.constraints()) ++out[c.group];
  return out;
}

gp::Expr steel_weight(const VesselVars& v, const ModelParams& prm) {
  const auto& h = v.h;
  const auto& a = v.arr;
  auto sec = structures::section_properties(h.B, h.D, v.p_td);
  const Monomial psup(prm.p_sup);
  std::vector<Expr> t;
  t.emplace_back(M(v.shell.area) * sec.p_sp);                                               // external hull
  t.emplace_back(M(0.5) * M(h.L) * M(h.B) * sec.p_bp);                                       // bottom plate
  t.emplace_back(M(2.0 / 3) * (M(a.ht) / M(h.T)).pow(1 / prm.beta) * M(h.B) * M(h.L) * M(v.p_td));  // inner bottom
  t.emplace_back(M(2 * 5.0 / 6) * M(h.B) * M(h.L) * M(v.p_td));                              // ro-ro decks
  t.emplace_back(M(h.B) * M(a.h_roro) * psup);                                               // ramp
  t.emplace_back(M(2 * 0.7) * M(h.L) * M(h.D) * sec.p_sp);                                   // longitudinal bulkheads
  for (auto& lt : a.lt)                                                                      // transverse bulkheads
    t.emplace_back(M(2.0) * hull::bulkhead_area_monomial(lt, h, a.ht_roro, prm.beta) * psup);
  const size_t c = static_cast<size_t>(a.center());
  for (size_t k = 0; k < a.l.size(); ++k)                                                    // room walls
    t.emplace_back(M(k == c ? 2.0 : 4.0) * M(a.l[k]) * M(a.h) * psup);
  t.emplace_back(M(v.l_sup) * M(6 * prm.h_sup) * psup);                                      // superstructure
  t.emplace_back(M(4.0) * M(v.l_sup) * M(h.B) * psup);
  t.emplace_back(M(2.0) * M(v.l_sup) * M(a.h_roro) * psup);
  t.emplace_back(M(h.B) * M(a.h_roro) * psup);
  t.emplace_back(M(6 * prm.h_sup) * M(h.B) * psup);
  return gp::sum(t) * M(prm.rho_st);
}

gp::Expr deadweight(const Monomial& cap_pax, const Monomial& cap_roro, const ModelParams& prm) {
  double k = (1 + prm.freshwater) * prm.dw_pax_weight;
  return Expr(M(prm.dw_scale * prm.dw_roro) * cap_roro) + Expr(k * prm.dw_pax_base) +
         Expr(M(k * prm.dw_pax_rate) * cap_pax);
}

double gt_exponent(double v_hat) { return 1 / (std::log10(v_hat) * std::log(10.0)); }

gp::Expr gross_tonnage(const Monomial& v_int, const ModelParams& prm) {
  double e = gt_exponent(prm.v_hat);
  return Expr(M(prm.gt_base) * v_int) +
         Expr(M(prm.gt_log * std::log10(prm.v_hat) * std::pow(prm.v_hat, -e)) * v_int.pow(1 + e));
}

double gross_tonnage_exact(double v_int, const ModelParams& prm) {
  return v_int * (prm.gt_base + prm.gt_log * std::log10(v_int));
}

std::vector<gp::Constraint> port_energy_balance(const Assembly& a, size_t s) {
  const auto& svc = a.services[s];
  const auto& fv = a.flows;
  std::vector<gp::Constraint> out;
  const size_t n = svc.legs.size();
  for (size_t k = 0; k < n; ++k) {
    const auto& arrive = svc.legs[k];
    const auto& next = svc.legs[(k + 1) % n];
    int j = arrive.leg.second;
    auto con = gp::le(next.energy, M(a.scenario.prm.eta_cha) * M(a.p_cha.at(j)) * M(fv.t_cha[s].at(arrive.leg)));
    con.label = fmt::format("port energy {} {}->{}", a.scenario.plan.services[s].name, arrive.leg.first, j);
    out.push_back(std::move(con));
  }
  return out;
}

namespace {

struct Builder {
  Assembly& a;
  const ModelFits& fits;
  const ModelParams& prm;
  double cb;

  void add(gp::Constraint c, const std::string& group) {
    c.group = group;
    a.problem.add(std::move(c));
  }
  void add_all(std::vector<gp::Constraint> cs, const std::string& group, const std::string& prefix = {}) {
    for (auto& c : cs) {
      c.label = prefix + c.label;
      add(std::move(c), group);
    }
  }

  VesselVars design(const std::string& pre) {
    auto& p = a.problem;
    VesselVars v;
    v.h = hull::add_hull_vars(p, pre);
    v.l_sup = p.add_var(pre + "L_sup");
    v.p_td = p.add_var(pre + "p_td");
    v.p_shaft_max = p.add_var(pre + "P_shaft_max");
    v.v_int = p.add_var(pre + "V_int");
    v.q = p.add_var(pre + "Q");
    v.arr = hull::add_arrangement_vars(p, static_cast<int>(prm.n_rooms), pre);
    v.wet = hull::wetted_area_constraints(p, v.h, prm.beta, prm.phi_a, pre + "wet ");
    hull::HullVars deep{v.h.L, v.h.B, v.h.D, v.h.D};
    v.shell = hull::wetted_area_constraints(p, deep, prm.beta, prm.phi_a, pre + "shell ");
    const auto& h = v.h;

    v.cap_pax = M(prm.n_sup / prm.phi_pax) * M(h.B) * M(v.l_sup);
    v.cap_roro = M(2 / prm.phi_roro) * M(h.B) * M(h.L);
    v.steel = steel_weight(v, prm);
    Expr outfit = Expr(M(prm.outfit_l) * M(h.L) * M(h.B)) +
                  Expr(M(1 / prm.outfit_sup_div) * M(v.l_sup).pow(prm.outfit_sup_exp) * M(h.B));
    v.lightweight = v.steel + outfit + Expr(M(prm.rho_mass / kJoulePerMWh) * M(v.q)) +
                    Expr(M(prm.rho_mot / 1e6) * M(v.p_shaft_max));
    v.deadweight = deadweight(v.cap_pax, v.cap_roro, prm);
    v.gross_tonnage = gross_tonnage(M(v.v_int), prm);

    // Hydrostatics
    const double rho_t = a.scenario.resistance.rho_sw / 1000;
    auto wb = gp::le(v.lightweight + v.deadweight, M(rho_t * cb) * M(h.L) * M(h.B) * M(h.T));
    wb.label = pre + "weight balance";
    add(std::move(wb), "Hydrostatics");
    auto st = hull::stability_constraint(h, prm.beta, Expr(M(prm.kg_ratio) * M(h.D)), prm.eps_gm, fits.stability);
    st.label = pre + "transverse stability";
    add(std::move(st), "Hydrostatics");
    auto bt_lo = gp::mono_ge(M(h.B) / M(h.T), 2.5), bt_hi = gp::le(Expr(M(h.B) / M(h.T)), M(6.0));
    bt_lo.label = pre + "B/T lower";
    bt_hi.label = pre + "B/T upper";
    add(std::move(bt_lo), "Hydrostatics");
    add(std::move(bt_hi), "Hydrostatics");
    add_all(v.shell.constraints, "Hydrostatics");

    // Structures
    structures::StrengthParams sp;
    sp.sigma_perm = prm.sigma_perm;
    sp.tau_perm = prm.tau_perm;
    auto strength = structures::strength_constraints(h.L, h.B, h.D, v.p_td, cb, sp);
    strength[0].label = "bending";
    strength[1].label = "shear";
    add_all(strength, "Structures", pre);

    // Hydrodynamics
    add_all(v.wet.constraints, "Hydrodynamics");

    // Dimensions (the longitudinal balance belongs to the hydrostatics)
    Monomial room = M(prm.rho_vol / (kJoulePerMWh * prm.n_rooms)) * M(v.q);
    hull::ArrangementParams ap;
    ap.beta = prm.beta;
    ap.h_batt_min = prm.h_batt_min;
    ap.h_roro_min = prm.h_roro_min;
    ap.floor_fraction = prm.floor_fraction;
    for (auto& c : hull::arrangement_constraints(v.arr, h, room, ap)) {
      bool lcb = c.label == "longitudinal balance";
      c.label = pre + c.label;
      add(std::move(c), lcb ? "Hydrostatics" : "Dimensions");
    }
    auto vi = gp::le(Expr(M(prm.c_int_b) * M(h.L) * M(h.B) * M(h.D)) +
                         Expr(M(prm.n_sup * prm.h_sup) * M(v.l_sup)),
                     M(v.v_int));
    vi.label = pre + "internal volume";
    add(std::move(vi), "Dimensions");
    auto sup = gp::le(Expr(v.l_sup), M(h.L));
    sup.label = pre + "superstructure within hull";
    add(std::move(sup), "Dimensions");
    return v;
  }
};

}  // namespace

Assembly assemble(const Scenario& sc, const ModelFits& fits, const AssembleOptions& opt) {
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("inconsistent scenario: ") + e.what());
  }
  Assembly a;
  a.scenario = sc;
  const auto& prm = a.scenario.prm;
  const auto& plan = a.scenario.plan;
  auto& p = a.problem;
  Builder b{a, fits, prm, hull::block_coefficient(prm.beta)};

  a.sets = network::build_index_sets(plan);
  network::Demand dem = sc.demand;
  for (auto& [k, f] : dem.f) f *= prm.demand_scale;
  a.scenario.demand = dem;

  network::NetworkParams np;
  np.n_rt_max = prm.n_rt_max;
  np.t_unit = sc.t_unit;
  np.value = sc.value;
  np.acc_plus = prm.acc_plus;
  np.acc_minus = prm.acc_minus;
  np.t_route.assign(plan.services.size(), prm.route_fraction * prm.t_ph * 3600);
  np.theta_u = prm.theta_u;
  a.flows = network::add_flow_vars(p, plan, a.sets, dem, np);

  const size_t ns = plan.services.size();
  const bool shared = sc.mode == FleetMode::Uniform;
  for (size_t d = 0; d < (shared ? 1 : ns); ++d)
    a.designs.push_back(b.design(shared ? std::string("fleet ") : plan.services[d].name + " "));

  for (int port = 1; port <= plan.n_ports(); ++port) {
    bool served = std::any_of(plan.services.begin(), plan.services.end(), [&](auto& s) {
      return std::find(s.ports.begin(), s.ports.end(), port) != s.ports.end();
    });
    if (served) a.p_cha[port] = p.add_var(fmt::format("P_cha[{}]", port));
  }

  propulsion::BatteryParams bp;
  bp.theta = prm.theta;
  bp.eta_dis = prm.eta_dis;
  bp.eta_cha = prm.eta_cha;
  bp.t_ph_hours = prm.t_ph;
  bp.t_life_years = prm.t_life;
  bp.deg = sc.degradation;

  std::vector<Monomial> vessels;
  for (size_t s = 0; s < ns; ++s) {
    const auto& svc = plan.services[s];
    const std::string pre = svc.name + " ";
    ServiceModel sm;
    sm.design = shared ? 0 : s;
    const auto& v = a.designs[sm.design];
    sm.n_v = p.add_var("N_vessel[" + svc.name + "]", gp::VarKind::Integer, 1, prm.n_v_max);
    sm.batt = {v.q, p.add_var(pre + "r_dis"), p.add_var(pre + "N_life"), p.add_var(pre + "N_batt")};
    vessels.push_back(M(sm.n_v));

    std::vector<Expr> energies;
    for (auto& leg : network::round_trip(a.sets, static_cast<int>(s))) {
      LegModel lm;
      lm.leg = leg;
      const auto& speed = a.flows.v[s].at(leg);
      auto lp = fmt::format("{}{}->{} ", pre, leg.first, leg.second);
      lm.res = propulsion::leg_resistance(p, v.h, v.wet.area, speed, prm.beta, sc.resistance, fits.resistance, lp);
      b.add_all(lm.res.constraints, "Hydrodynamics");
      lm.t_sea = network::sea_time(plan.edge_nm(leg.first, leg.second) * network::kNauticalMile, speed, prm.acc_plus,
                                   prm.acc_minus);
      auto pc = propulsion::power_chain(lm.res.total, speed, prm.eta_prop, prm.p_aux * 1e6);
      lm.shaft = pc.shaft;
      lm.discharge = pc.discharge;
      lm.energy = pc.discharge * Expr(lm.t_sea);
      auto motor = gp::le(lm.shaft, M(v.p_shaft_max));
      motor.label = lp + "motor rating";
      b.add(std::move(motor), "Energy");
      energies.push_back(lm.energy);
      sm.legs.push_back(std::move(lm));
    }
    auto bb = propulsion::battery_constraints(sm.batt, energies, M(a.flows.n_rt[s]), bp, pre);
    b.add_all(bb.constraints, "Energy");
    a.warnings.insert(a.warnings.end(), bb.warnings.begin(), bb.warnings.end());
    a.services.push_back(std::move(sm));
  }
  if (opt.port_balance)
    for (size_t s = 0; s < ns; ++s) b.add_all(port_energy_balance(a, s), "Energy");

  // Operations
  std::vector<std::vector<Monomial>> cap;
  for (size_t s = 0; s < ns; ++s) {
    const auto& v = a.designs[a.services[s].design];
    cap.push_back({M(a.services[s].n_v) * v.cap_pax, M(a.services[s].n_v) * v.cap_roro});
  }
  b.add_all(network::capacity_constraints(plan, a.sets, a.flows, cap, static_cast<int>(dem.cargo.size())),
            "Operations");
  b.add_all(network::demand_constraints(a.sets, a.flows, dem), "Operations");
  b.add_all(network::timing_and_availability(plan, a.sets, a.flows, np, vessels), "Operations");
  a.alpha = network::utility_weights(plan, a.sets, dem, np);
  a.u_min = sc.u_min ? *sc.u_min : network::utility_target(a.sets, dem, a.alpha, prm.theta_u);
  b.add(network::service_level_constraint(a.flows, a.alpha, a.u_min), "Operations");

  if (sc.mode == FleetMode::Baseline)
    for (size_t s = 0; s < ns; ++s) {
      const auto& bl = sc.baseline[s];
      const auto& v = a.designs[s];
      p.fix(v.h.L.id, bl.L);
      p.fix(v.l_sup.id, bl.L_sup);
      p.fix(a.flows.n_rt[s].id, bl.n_rt);
      p.fix(a.services[s].n_v.id, bl.n_vessel);
    }

  // Objective, EUR per year
  const double life = prm.t_life, nph = prm.periods_per_year();
  std::vector<Expr> hotel, deck, battery, steel, berth, elec, chargers;
  auto add_charger = [&](double c, const Variable& pv) {
    if (c > 0) chargers.emplace_back(M(c) * M(pv));
  };
  for (size_t s = 0; s < ns; ++s) {
    const auto& sm = a.services[s];
    const auto& v = a.designs[sm.design];
    Monomial nv = M(sm.n_v);
    Monomial calls = nv * M(nph) * M(a.flows.n_rt[s]);
    auto add = [](std::vector<Expr>& to, double c, const Expr& e) {
      if (c > 0) to.push_back(Expr(M(c)) * e);
    };
    add(hotel, prm.c_hotel / life, Expr(nv * v.cap_pax));
    add(deck, prm.c_deck / life, Expr(nv));
    add(battery, prm.c_batt * prm.k_batt / (life * kJoulePerMWh), Expr(nv * M(sm.batt.n_batt) * M(v.q)));
    add(steel, prm.c_steel / life, v.steel * nv);
    double port_rate = 0;
    for (auto& lm : sm.legs) {
      int j = lm.leg.second;
      port_rate += sc.c_port[static_cast<size_t>(j - 1)];
      add(elec, sc.c_el[static_cast<size_t>(j - 1)] / kJoulePerMWh,
          Expr(calls * M(a.p_cha.at(j)) * M(a.flows.t_cha[s].at(lm.leg))));
    }
    add(berth, port_rate, v.gross_tonnage * calls);
  }
  for (auto& [port, pv] : a.p_cha) add_charger(prm.c_cha / (life * 1e6), pv);
  // zero-priced terms are left out of the objective and reported as 0
  const std::vector<std::vector<Expr>*> lists{&hotel, &deck, &battery, &steel, &berth, &elec, &chargers};
  for (size_t k = 0; k < kCostTerms.size(); ++k)
    if (!lists[k]->empty()) a.cost.emplace_back(kCostTerms[k], gp::sum(*lists[k]));
  if (a.cost.empty()) throw std::invalid_argument("every cost coefficient is zero");
  std::vector<Expr> all;
  for (auto& [name, e] : a.cost) all.push_back(e);
  p.minimize(gp::sum(all));
  return a;
}

std::vector<Check> original_constraint_checks(const Assembly& a, const std::vector<double>& x) {
  std::vector<Check> out;
  const auto& p = a.problem;
  for (auto& c : p.constraints()) out.push_back({c.group + ": " + c.label, gp::violation(c, x)});
  for (auto id : p.integer_vars())
    out.push_back({"integral " + p.var(id).var.name, std::abs(x[id] - std::round(x[id]))});
  const auto& prm = a.scenario.prm;
  auto val = [&](const Variable& v) { return x.at(static_cast<size_t>(v.id)); };
  for (auto& v : a.designs) {
    double L = val(v.h.L), B = val(v.h.B), T = val(v.h.T), D = val(v.h.D);
    double wet = 2 * prm.phi_a * L * hull::midship_arc_simpson(B, T, prm.beta);
    double shell = 2 * prm.phi_a * L * hull::midship_arc_simpson(B, D, prm.beta);
    out.push_back({v.wet.area.name + " exact arc", std::max(0.0, wet / val(v.wet.area) - 1)});
    out.push_back({v.shell.area.name + " exact arc", std::max(0.0, shell / val(v.shell.area) - 1)});
  }
  const auto& rc = a.scenario.resistance;
  for (auto& sm : a.services) {
    const auto& v = a.designs[sm.design];
    for (auto& lm : sm.legs) {
      double r = val(lm.res.vars.r_cf);
      double cf_model = 75 * rc.cf_scale / (r * r);
      double cf_true = propulsion::cf_ittc(propulsion::reynolds(val(lm.res.vars.v), val(v.h.L), rc), rc);
      out.push_back({lm.res.vars.r_cf.name + " ITTC line", std::max(0.0, cf_true / cf_model - 1)});
    }
  }
  return out;
}

FleetSolution extract_and_validate(const Assembly& a, const gp::Solution& sol, double tol) {
  if (sol.status != gp::Status::Optimal)
    throw std::invalid_argument("cannot extract a solution with status " + gp::to_string(sol.status));
  const auto& x = sol.values;
  const auto& sc = a.scenario;
  const auto& prm = sc.prm;
  FleetSolution fs;
  fs.scenario = sc.name;
  fs.case_label = sc.case_label;
  fs.mode = to_string(sc.mode);
  fs.status = gp::to_string(sol.status);
  fs.port_names = sc.plan.port_names;
  fs.bnb_nodes = sol.bnb_nodes;

  for (auto& c : original_constraint_checks(a, x))
    if (c.violation >= fs.worst_violation) {
      fs.worst_violation = c.violation;
      fs.worst_constraint = c.label;
    }
  if (fs.worst_violation > tol)
    throw ValidationError(fmt::format("validation failed: '{}' violated by {:.3e} (tolerance {:.0e})",
                                      fs.worst_constraint, fs.worst_violation, tol));

  auto asg = gp::to_assignment(x);
  auto val = [&](const Variable& v) { return x.at(static_cast<size_t>(v.id)); };
  auto ev = [&](const Expr& e) { return gp::evaluate(e, asg); };

  fs.objective = ev(a.problem.objective());
  double total = 0;
  for (auto& name : kCostTerms) {
    double v = 0;
    for (auto& [n, e] : a.cost)
      if (n == name) v = ev(e);
    fs.cost.emplace_back(name, v);
    total += v;
  }
  if (std::abs(total - fs.objective) > 1e-9 * std::abs(fs.objective))
    throw ValidationError(fmt::format("cost breakdown {} does not sum to the objective {}", total, fs.objective));

  const auto& plan = sc.plan;
  for (size_t s = 0; s < a.services.size(); ++s) {
    const auto& sm = a.services[s];
    const auto& v = a.designs[sm.design];
    ServiceReport r;
    r.name = plan.services[s].name;
    r.ports = plan.services[s].ports;
    r.n_rt = static_cast<int>(std::lround(val(a.flows.n_rt[s])));
    r.n_vessel = static_cast<int>(std::lround(val(sm.n_v)));
    r.L = val(v.h.L);
    r.B = val(v.h.B);
    r.T = val(v.h.T);
    r.D = val(v.h.D);
    r.L_sup = val(v.l_sup);
    r.p_td = val(v.p_td);
    r.v_int = val(v.v_int);
    r.v_gt = ev(v.gross_tonnage);
    r.e_batt_mwh = val(v.q) / kJoulePerMWh;
    r.t_cell_years = val(sm.batt.n_life) * prm.t_ph / 8760;
    r.n_batt = val(sm.batt.n_batt);
    r.cap_pax = gp::evaluate(v.cap_pax, asg);
    r.cap_roro = gp::evaluate(v.cap_roro, asg);
    r.lightweight = ev(v.lightweight);
    r.deadweight = ev(v.deadweight);
    r.steel = ev(v.steel);
    r.p_shaft_max_mw = val(v.p_shaft_max) / 1e6;
    for (auto& lm : sm.legs) {
      LegReport l;
      l.from = lm.leg.first;
      l.to = lm.leg.second;
      double speed = val(lm.res.vars.v);
      l.speed_kn = speed / kKnot;
      l.froude = gp::evaluate(lm.res.froude, asg);
      l.t_sea_h = ev(Expr(lm.t_sea)) / 3600;
      l.t_port_h = val(a.flows.t_port[s].at(lm.leg)) / 3600;
      l.t_cha_h = val(a.flows.t_cha[s].at(lm.leg)) / 3600;
      l.resistance_kn = ev(lm.res.total) / 1e3;
      l.shaft_mw = ev(lm.shaft) / 1e6;
      l.energy_mwh = ev(lm.energy) / kJoulePerMWh;
      r.legs.push_back(l);
    }
    fs.services.push_back(std::move(r));
  }
  for (auto& [port, pv] : a.p_cha) fs.charger_mw[port] = val(pv) / 1e6;
  for (auto& [key, var] : a.flows.f) {
    auto [i, j, c, s] = key;
    fs.flows.push_back({i, j, sc.demand.cargo[static_cast<size_t>(c)], plan.services[static_cast<size_t>(s)].name,
                        val(var)});
  }
  fs.utility = network::network_utility(a.flows, a.alpha, x);
  fs.u_min = a.u_min;
  return fs;
}

}  // namespace zevrpp::model
