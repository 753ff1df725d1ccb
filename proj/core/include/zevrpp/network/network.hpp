#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "zevrpp/gp/problem.hpp"

namespace zevrpp::network {

constexpr double kNauticalMile = 1852.0;

using Arc = std::pair<int, int>;  // directed (from, to), 1-based port numbers

struct Service {
  std::string name;
  std::vector<int> ports;  // strictly increasing
};

struct RoutePlan {
  std::vector<std::string> port_names;  // index 0 is port 1
  std::vector<Service> services;
  std::map<Arc, double> distance_nm;   // undirected edges, stored with from < to

  int n_ports() const { return static_cast<int>(port_names.size()); }
  double edge_nm(int i, int j) const;  // throws if the edge is not listed
};

struct IndexSets {
  std::vector<std::vector<Arc>> legs;  // outbound legs per service
  std::vector<std::vector<Arc>> arcs;  // A_s
  std::map<Arc, std::vector<int>> suppliers;

  // N^-_is and N^+_is (both include i)
  static std::vector<int> preceding(const Service& s, int i);
  static std::vector<int> following(const Service& s, int i);
};

IndexSets build_index_sets(const RoutePlan& plan);

// Shortest distance over the listed edges.
double arc_distance_nm(const RoutePlan& plan, int i, int j);

struct Demand {
  std::vector<std::string> cargo;
  std::map<std::tuple<int, int, int>, double> f;  // (i, j, c) per planning horizon

  double get(int i, int j, int c) const;
};

struct NetworkParams {
  double n_rt_max = 16;
  std::vector<double> t_unit;      // s per demand unit, per cargo
  std::vector<double> value;       // utility weight per cargo
  double acc_plus = 0.03;          // m/s^2
  double acc_minus = 0.03;
  std::vector<double> t_route;     // s per service
  double theta_u = 0.9;
};

struct FlowVars {
  std::map<std::tuple<int, int, int, int>, gp::Variable> f;  // (i, j, c, s)
  std::vector<gp::Variable> n_rt;
  // keyed by directed leg (i, j) per service
  std::vector<std::map<Arc, gp::Variable>> v, t_cha, t_port;

  const gp::Variable* flow(int i, int j, int c, int s) const;
};

// Flow variables only for arcs with positive demand.
FlowVars add_flow_vars(gp::Problem& p, const RoutePlan& plan, const IndexSets& sets, const Demand& dem,
                       const NetworkParams& prm);

// cap[s][c] is the vessel capacity monomial of service s.
std::vector<gp::Constraint> capacity_constraints(const RoutePlan& plan, const IndexSets& sets, const FlowVars& fv,
                                                 const std::vector<std::vector<gp::Monomial>>& cap, int n_cargo);

std::vector<gp::Constraint> demand_constraints(const IndexSets& sets, const FlowVars& fv, const Demand& dem);

// l/v + (v/2)(1/a+ + 1/a-), distance in metres
gp::Posynomial sea_time(double distance_m, const gp::Variable& v, double acc_plus, double acc_minus);

// Directed legs of one round trip, outbound first, then inbound in sailing order.
std::vector<Arc> round_trip(const IndexSets& sets, int s);

// Cargo moved at the arrival port of a directed leg: unloaded (arriving there)
// and loaded (departing on the next leg of the round trip).
std::vector<gp::Monomial> unload_units(const RoutePlan& plan, const FlowVars& fv, int s, const Arc& leg, int c);
std::vector<gp::Monomial> load_units(const RoutePlan& plan, const FlowVars& fv, int s, const Arc& leg, int c);

// t_port >= each of t_unit * unload / calls, t_unit * load / calls, t_cha, where
// calls = N_rt N_vessel is the number of calls per horizon (vessels[s], 1 if absent);
// and N_rt sum (t_sea + t_port) <= t_route per service.
std::vector<gp::Constraint> timing_and_availability(const RoutePlan& plan, const IndexSets& sets, const FlowVars& fv,
                                                    const NetworkParams& prm,
                                                    const std::vector<gp::Monomial>& vessels = {});

// alpha_ijc = l_ij / sum l * value_c over arcs carrying flow variables.
std::map<std::tuple<int, int, int>, double> utility_weights(const RoutePlan& plan, const IndexSets& sets,
                                                            const Demand& dem, const NetworkParams& prm);

// Utility with every flow at its equal share of demand, scaled by theta.
double utility_target(const IndexSets& sets, const Demand& dem, const std::map<std::tuple<int, int, int>, double>& alpha,
                      double theta);

// prod f^alpha >= exp(U_min)
gp::Constraint service_level_constraint(const FlowVars& fv, const std::map<std::tuple<int, int, int>, double>& alpha,
                                        double u_min);

double network_utility(const FlowVars& fv, const std::map<std::tuple<int, int, int>, double>& alpha,
                       const std::vector<double>& x);

}  // namespace zevrpp::network
