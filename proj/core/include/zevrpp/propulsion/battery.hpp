#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zevrpp/gp/problem.hpp"
#include "zevrpp/propulsion/coefficients.hpp"

namespace zevrpp::propulsion {

struct BatteryParams {
  double theta = 2.0;  // excess capacity factor
  double eta_dis = 0.95;
  double eta_cha = 0.95;
  double t_ph_hours = 48.0;    // planning horizon
  double t_life_years = 30.0;  // vessel lifetime
  DegradationParams deg;

  double periods_per_year() const { return 365.0 * 24.0 / t_ph_hours; }
};

struct BatteryVars {
  gp::Variable q;       // capacity, J
  gp::Variable r_dis;   // cell charge throughput per round trip, A s
  gp::Variable n_life;  // planning horizons per battery
  gp::Variable n_batt;  // batteries over the vessel lifetime
};

BatteryVars add_battery_vars(gp::Problem& p, const std::string& prefix);

struct BatteryBuild {
  std::vector<gp::Constraint> constraints;
  std::vector<std::string> warnings;
};

// leg_energy holds b t_sea (J) for both directions of every leg of one round trip.
// Emits Q >= Theta/eta_dis (b t)_ij for each entry, r_dis >= Q~ sum (b t) / Q,
// the capacity-loss inequality, and N_batt >= max{1, t_life N_ph / N_life}.
BatteryBuild battery_constraints(const BatteryVars& bv, const std::vector<gp::Expr>& leg_energy,
                                 const gp::Monomial& n_rt, const BatteryParams& prm, const std::string& prefix);

// Cell Ah throughput and mean C-rate over the horizon implied by a solution.
double cell_throughput_ah(double r_dis, double n_rt, double n_life);
double capacity_loss_from_solution(double r_dis, double n_rt, double n_life, const BatteryParams& prm);

struct CurrentSegment {
  double hours;
  double amps;
};

// Capacity loss (percent) after t hours of a periodically repeated profile.
double capacity_loss(const std::vector<CurrentSegment>& period, const DegradationParams& d, double t_hours);

// Full-depth cycles at the given C-rate, evenly spread over a day.
std::vector<CurrentSegment> daily_cycles(int cycles_per_day, double c_rate, double depth, const DegradationParams& d);

struct LossPoint {
  double hours;
  double loss;
};

std::vector<LossPoint> capacity_loss_curve(const std::vector<CurrentSegment>& period, const DegradationParams& d,
                                           double t_end_hours, int points);
void write_csv(std::ostream& out, const std::vector<LossPoint>& curve);

}  // namespace zevrpp::propulsion
