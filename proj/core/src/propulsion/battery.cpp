#include "zevrpp/propulsion/battery.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace zevrpp::propulsion {

using gp::Monomial;

BatteryVars add_battery_vars(gp::Problem& p, const std::string& prefix) {
  return {p.add_var(prefix + "Q"), p.add_var(prefix + "r_dis"), p.add_var(prefix + "N_life"),
          p.add_var(prefix + "N_batt")};
}

namespace {

double xi(const DegradationParams& d) { return (d.chi2 + 0.5 * d.chi3) * std::exp(-d.e_a / (d.r_g * d.t_cell)); }

}  // namespace

BatteryBuild battery_constraints(const BatteryVars& bv, const std::vector<gp::Expr>& leg_energy,
                                 const gp::Monomial& n_rt, const BatteryParams& prm, const std::string& prefix) {
  if (leg_energy.empty()) throw std::invalid_argument("battery constraints need at least one leg");
  if (!(prm.eta_dis > 0 && prm.eta_dis <= 1)) throw std::invalid_argument("eta_dis must lie in (0, 1]");
  BatteryBuild out;
  if (prm.theta < 2)
    out.warnings.push_back(fmt::format("{}excess capacity factor {} < 2 breaks the mean-charge assumption", prefix, prm.theta));
  auto add = [&](gp::Constraint c, const std::string& name) {
    c.label = prefix + name;
    out.constraints.push_back(std::move(c));
  };
  const auto& d = prm.deg;
  for (size_t k = 0; k < leg_energy.size(); ++k)
    add(gp::le(leg_energy[k] * Monomial(prm.theta / prm.eta_dis), Monomial(bv.q)), fmt::format("capacity {}", k));

  const double q_cell_as = d.q_cell_ah * 3600;
  add(gp::le(gp::sum(leg_energy) * Monomial(q_cell_as), Monomial(bv.q) * Monomial(bv.r_dis)), "discharge");

  const double t_ph_s = prm.t_ph_hours * 3600;
  Monomial throughput = Monomial(2.0 / 3600) * Monomial(bv.n_life) * n_rt * Monomial(bv.r_dis);
  Monomial rate = Monomial(d.chi4 * 2 / (d.r_g * d.t_cell * d.q_cell_ah * t_ph_s)) * n_rt * Monomial(bv.r_dis);
  add(gp::le(gp::Expr(Monomial(xi(d)) * throughput.pow(d.chi1)) * gp::exp_of(gp::Expr(rate)), Monomial(d.phi_max)),
      "capacity loss");

  add(gp::mono_ge(Monomial(bv.n_batt), 1.0), "batteries >= 1");
  // t_life N_ph / N_life: lifetime over battery life, both in planning horizons
  add(gp::le(gp::Expr(Monomial(prm.t_life_years * prm.periods_per_year()) / Monomial(bv.n_life)), Monomial(bv.n_batt)),
      "batteries >= lifetime");
  return out;
}

double cell_throughput_ah(double r_dis, double n_rt, double n_life) { return 2 * n_life * n_rt * r_dis / 3600; }

double capacity_loss_from_solution(double r_dis, double n_rt, double n_life, const BatteryParams& prm) {
  const auto& d = prm.deg;
  double rate = 2 * n_rt * r_dis / (prm.t_ph_hours * 3600) / d.q_cell_ah;
  return std::pow(cell_throughput_ah(r_dis, n_rt, n_life), d.chi1) * xi(d) *
         std::exp(d.chi4 * rate / (d.r_g * d.t_cell));
}

double capacity_loss(const std::vector<CurrentSegment>& period, const DegradationParams& d, double t_hours) {
  if (t_hours <= 0) return 0.0;
  double len = 0, per_period = 0;
  for (auto& s : period) {
    if (s.hours < 0) throw std::invalid_argument("negative segment duration");
    len += s.hours;
    per_period += s.hours * std::abs(s.amps);
  }
  if (!(len > 0)) throw std::invalid_argument("empty current profile");
  double whole = std::floor(t_hours / len);
  double acc = whole * per_period, rem = t_hours - whole * len;
  for (auto& s : period) {
    double dt = std::min(rem, s.hours);
    acc += dt * std::abs(s.amps);
    rem -= dt;
    if (rem <= 0) break;
  }
  if (acc <= 0) return 0.0;
  double rate = acc / t_hours / d.q_cell_ah;
  return std::pow(acc, d.chi1) * xi(d) * std::exp(d.chi4 * rate / (d.r_g * d.t_cell));
}

std::vector<CurrentSegment> daily_cycles(int cycles_per_day, double c_rate, double depth, const DegradationParams& d) {
  if (cycles_per_day < 1 || !(c_rate > 0) || !(depth > 0 && depth <= 1)) throw std::invalid_argument("bad cycling profile");
  double slot = 24.0 / cycles_per_day, half = depth / c_rate;
  if (2 * half > slot) throw std::invalid_argument("cycles do not fit in a day at this rate");
  double amps = c_rate * d.q_cell_ah;
  std::vector<CurrentSegment> p;
  for (int k = 0; k < cycles_per_day; ++k) {
    p.push_back({half, amps});
    p.push_back({half, -amps});
    if (slot > 2 * half) p.push_back({slot - 2 * half, 0.0});
  }
  return p;
}

std::vector<LossPoint> capacity_loss_curve(const std::vector<CurrentSegment>& period, const DegradationParams& d,
                                           double t_end_hours, int points) {
  if (points < 2) throw std::invalid_argument("need at least two points");
  std::vector<LossPoint> out;
  for (int i = 0; i < points; ++i) {
    double t = t_end_hours * i / (points - 1);
    out.push_back({t, capacity_loss(period, d, t)});
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<LossPoint>& curve) {
  out << "hours,loss_percent\n";
  for (auto& p : curve) out << fmt::format("{:.6g},{:.6g}\n", p.hours, p.loss);
}

}  // namespace zevrpp::propulsion
