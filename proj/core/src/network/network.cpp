#include "zevrpp/network/network.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zevrpp::network {

using gp::Monomial;
using gp::Posynomial;

double RoutePlan::edge_nm(int i, int j) const {
  auto it = distance_nm.find({std::min(i, j), std::max(i, j)});
  if (it == distance_nm.end()) throw std::out_of_range(fmt::format("no distance listed for ports {}-{}", i, j));
  return it->second;
}

std::vector<int> IndexSets::preceding(const Service& s, int i) {
  std::vector<int> out;
  for (int p : s.ports)
    if (p <= i) out.push_back(p);
  return out;
}

std::vector<int> IndexSets::following(const Service& s, int i) {
  std::vector<int> out;
  for (int p : s.ports)
    if (p >= i) out.push_back(p);
  return out;
}

IndexSets build_index_sets(const RoutePlan& plan) {
  IndexSets sets;
  for (size_t s = 0; s < plan.services.size(); ++s) {
    const auto& svc = plan.services[s];
    if (svc.ports.size() < 2) throw std::invalid_argument(fmt::format("service {} calls fewer than 2 ports", svc.name));
    for (size_t k = 0; k < svc.ports.size(); ++k) {
      int p = svc.ports[k];
      if (p < 1 || p > plan.n_ports()) throw std::invalid_argument(fmt::format("service {}: unknown port {}", svc.name, p));
      if (k > 0 && p <= svc.ports[k - 1])
        throw std::invalid_argument(fmt::format("service {}: ports must be strictly increasing", svc.name));
    }
    std::vector<Arc> legs, arcs;
    for (size_t k = 0; k + 1 < svc.ports.size(); ++k) {
      legs.emplace_back(svc.ports[k], svc.ports[k + 1]);
      plan.edge_nm(svc.ports[k], svc.ports[k + 1]);
    }
    for (int i : svc.ports)
      for (int j : svc.ports)
        if (i != j) {
          arcs.emplace_back(i, j);
          sets.suppliers[{i, j}].push_back(static_cast<int>(s));
        }
    sets.legs.push_back(std::move(legs));
    sets.arcs.push_back(std::move(arcs));
  }
  return sets;
}

double arc_distance_nm(const RoutePlan& plan, int i, int j) {
  const int n = plan.n_ports();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n + 1, std::vector<double>(n + 1, inf));
  for (int k = 1; k <= n; ++k) d[k][k] = 0;
  for (auto& [e, l] : plan.distance_nm) d[e.first][e.second] = d[e.second][e.first] = std::min(d[e.first][e.second], l);
  for (int k = 1; k <= n; ++k)
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) d[a][b] = std::min(d[a][b], d[a][k] + d[k][b]);
  if (!std::isfinite(d[i][j])) throw std::out_of_range(fmt::format("ports {} and {} are not connected", i, j));
  return d[i][j];
}

double Demand::get(int i, int j, int c) const {
  auto it = f.find({i, j, c});
  return it == f.end() ? 0.0 : it->second;
}

const gp::Variable* FlowVars::flow(int i, int j, int c, int s) const {
  auto it = f.find({i, j, c, s});
  return it == f.end() ? nullptr : &it->second;
}

FlowVars add_flow_vars(gp::Problem& p, const RoutePlan& plan, const IndexSets& sets, const Demand& dem,
                       const NetworkParams& prm) {
  FlowVars fv;
  const int nc = static_cast<int>(dem.cargo.size());
  for (size_t s = 0; s < plan.services.size(); ++s) {
    const auto& name = plan.services[s].name;
    int si = static_cast<int>(s);
    for (auto& [i, j] : sets.arcs[s])
      for (int c = 0; c < nc; ++c)
        if (dem.get(i, j, c) > 0)
          fv.f[{i, j, c, si}] = p.add_var(fmt::format("f[{},{},{},{}]", i, j, dem.cargo[static_cast<size_t>(c)], name));
    fv.n_rt.push_back(p.add_var(fmt::format("N_rt[{}]", name), gp::VarKind::Integer, 1, prm.n_rt_max));
    fv.v.emplace_back();
    fv.t_cha.emplace_back();
    fv.t_port.emplace_back();
    for (auto& leg : round_trip(sets, si)) {
      auto tag = fmt::format("{},{},{}", leg.first, leg.second, name);
      fv.v.back()[leg] = p.add_var("v[" + tag + "]");
      fv.t_cha.back()[leg] = p.add_var("t_cha[" + tag + "]");
      fv.t_port.back()[leg] = p.add_var("t_port[" + tag + "]");
    }
  }
  return fv;
}

namespace {

void push_flow(std::vector<Monomial>& terms, const FlowVars& fv, int i, int j, int c, int s) {
  if (auto* v = fv.flow(i, j, c, s)) terms.emplace_back(*v);
}

}  // namespace

std::vector<gp::Constraint> capacity_constraints(const RoutePlan& plan, const IndexSets& sets, const FlowVars& fv,
                                                 const std::vector<std::vector<gp::Monomial>>& cap, int n_cargo) {
  std::vector<gp::Constraint> out;
  for (size_t s = 0; s < plan.services.size(); ++s) {
    const auto& svc = plan.services[s];
    int si = static_cast<int>(s);
    for (size_t k = 0; k + 1 < svc.ports.size(); ++k) {
      int i = svc.ports[k];
      auto pre = IndexSets::preceding(svc, i), post = IndexSets::following(svc, i);
      post.erase(post.begin());
      for (int c = 0; c < n_cargo; ++c) {
        Monomial rhs = Monomial(fv.n_rt[s]) * cap[s][static_cast<size_t>(c)];
        for (bool outbound : {true, false}) {
          std::vector<Monomial> terms;
          for (int a : pre)
            for (int b : post) outbound ? push_flow(terms, fv, a, b, c, si) : push_flow(terms, fv, b, a, c, si);
          if (terms.empty()) continue;
          auto con = gp::le(gp::Expr(Posynomial(std::move(terms))), rhs);
          con.label = fmt::format("capacity {} {} port {} cargo {}", svc.name, outbound ? "out" : "in", i, c);
          out.push_back(std::move(con));
        }
      }
    }
  }
  return out;
}

std::vector<gp::Constraint> demand_constraints(const IndexSets& sets, const FlowVars& fv, const Demand& dem) {
  std::vector<gp::Constraint> out;
  for (auto& [arc, sup] : sets.suppliers)
    for (int c = 0; c < static_cast<int>(dem.cargo.size()); ++c) {
      double d = dem.get(arc.first, arc.second, c);
      if (d <= 0) continue;
      std::vector<Monomial> terms;
      for (int s : sup) push_flow(terms, fv, arc.first, arc.second, c, s);
      auto con = gp::le(gp::Expr(Posynomial(std::move(terms))), Monomial(d));
      con.label = fmt::format("demand {}->{} cargo {}", arc.first, arc.second, c);
      out.push_back(std::move(con));
    }
  return out;
}

gp::Posynomial sea_time(double distance_m, const gp::Variable& v, double acc_plus, double acc_minus) {
  return Posynomial({Monomial(distance_m) / Monomial(v), Monomial(0.5 * (1 / acc_plus + 1 / acc_minus)) * Monomial(v)});
}

std::vector<Arc> round_trip(const IndexSets& sets, int s) {
  const auto& legs = sets.legs[static_cast<size_t>(s)];
  std::vector<Arc> out(legs.begin(), legs.end());
  for (auto it = legs.rbegin(); it != legs.rend(); ++it) out.emplace_back(it->second, it->first);
  return out;
}

std::vector<Monomial> unload_units(const RoutePlan& plan, const FlowVars& fv, int s, const Arc& leg, int c) {
  const auto& svc = plan.services[static_cast<size_t>(s)];
  auto [i, j] = leg;
  std::vector<Monomial> terms;
  for (int a : svc.ports)
    if ((i < j && a < j) || (i > j && a > j)) push_flow(terms, fv, a, j, c, s);
  return terms;
}

std::vector<Monomial> load_units(const RoutePlan& plan, const FlowVars& fv, int s, const Arc& leg, int c) {
  const auto& svc = plan.services[static_cast<size_t>(s)];
  int j = leg.second;
  bool next_outbound = leg.first < j ? j != svc.ports.back() : j == svc.ports.front();
  std::vector<Monomial> terms;
  for (int b : svc.ports)
    if ((next_outbound && b > j) || (!next_outbound && b < j)) push_flow(terms, fv, j, b, c, s);
  return terms;
}

std::vector<gp::Constraint> timing_and_availability(const RoutePlan& plan, const IndexSets& sets, const FlowVars& fv,
                                                    const NetworkParams& prm, const std::vector<gp::Monomial>& vessels) {
  std::vector<gp::Constraint> out;
  const int nc = static_cast<int>(prm.t_unit.size());
  for (size_t s = 0; s < plan.services.size(); ++s) {
    const auto& svc = plan.services[s];
    int si = static_cast<int>(s);
    std::vector<Monomial> cycle;
    Monomial calls = Monomial(fv.n_rt[s]) * (s < vessels.size() ? vessels[s] : Monomial(1.0));
    for (auto& leg : round_trip(sets, si)) {
      Monomial tp(fv.t_port[s].at(leg));
      auto tag = fmt::format("{} {}->{}", svc.name, leg.first, leg.second);
      for (int c = 0; c < nc; ++c) {
        double tu = prm.t_unit[static_cast<size_t>(c)];
        for (auto& [units, kind] : {std::pair{unload_units(plan, fv, si, leg, c), "unload"},
                                    std::pair{load_units(plan, fv, si, leg, c), "load"}}) {
          if (units.empty()) continue;
          auto con = gp::le(gp::Expr(Posynomial(units) * (Monomial(tu) / calls)), tp);
          con.label = fmt::format("port time {} {} cargo {}", tag, kind, c);
          out.push_back(std::move(con));
        }
      }
      auto cha = gp::le(gp::Expr(Monomial(fv.t_cha[s].at(leg))), tp);
      cha.label = "port time " + tag + " charging";
      out.push_back(std::move(cha));
      auto sea = sea_time(plan.edge_nm(leg.first, leg.second) * kNauticalMile, fv.v[s].at(leg), prm.acc_plus,
                          prm.acc_minus);
      cycle.insert(cycle.end(), sea.terms().begin(), sea.terms().end());
      cycle.push_back(tp);
    }
    auto avail = gp::le(gp::Expr(Posynomial(std::move(cycle)) * Monomial(fv.n_rt[s])),
                        Monomial(prm.t_route.at(s)));
    avail.label = "availability " + svc.name;
    out.push_back(std::move(avail));
  }
  return out;
}

std::map<std::tuple<int, int, int>, double> utility_weights(const RoutePlan& plan, const IndexSets& sets,
                                                            const Demand& dem, const NetworkParams& prm) {
  std::map<std::tuple<int, int, int>, double> alpha;
  double total = 0;
  std::vector<std::tuple<int, int, int, double>> rows;
  for (auto& [arc, sup] : sets.suppliers)
    for (int c = 0; c < static_cast<int>(dem.cargo.size()); ++c)
      if (dem.get(arc.first, arc.second, c) > 0) {
        double l = arc_distance_nm(plan, arc.first, arc.second);
        rows.emplace_back(arc.first, arc.second, c, l);
        total += l;
      }
  if (!(total > 0)) throw std::invalid_argument("no served demand: utility weights are all zero");
  for (auto& [i, j, c, l] : rows) alpha[{i, j, c}] = l / total * prm.value.at(static_cast<size_t>(c));
  return alpha;
}

double utility_target(const IndexSets& sets, const Demand& dem, const std::map<std::tuple<int, int, int>, double>& alpha,
                      double theta) {
  double u = 0;
  for (auto& [key, a] : alpha) {
    auto [i, j, c] = key;
    double n = static_cast<double>(sets.suppliers.at({i, j}).size());
    u += a * n * std::log(theta * dem.get(i, j, c) / n);
  }
  return u;
}

gp::Constraint service_level_constraint(const FlowVars& fv, const std::map<std::tuple<int, int, int>, double>& alpha,
                                        double u_min) {
  Monomial prod(1.0);
  bool any = false;
  for (auto& [key, var] : fv.f) {
    auto [i, j, c, s] = key;
    auto it = alpha.find({i, j, c});
    if (it == alpha.end() || it->second <= 0) continue;
    prod = prod * Monomial(var).pow(it->second);
    any = true;
  }
  if (!any) throw std::invalid_argument("service level: all utility weights are zero");
  auto con = gp::le(gp::Expr(std::exp(u_min)), prod);
  con.label = "service level";
  return con;
}

double network_utility(const FlowVars& fv, const std::map<std::tuple<int, int, int>, double>& alpha,
                       const std::vector<double>& x) {
  double u = 0;
  for (auto& [key, var] : fv.f) {
    auto [i, j, c, s] = key;
    auto it = alpha.find({i, j, c});
    if (it != alpha.end()) u += it->second * std::log(x.at(static_cast<size_t>(var.id)));
  }
  return u;
}

}  // namespace zevrpp::network
