#pragma once

#include <string>
#include <vector>

#include "zevrpp/app/run.hpp"
#include "zevrpp/model/model.hpp"

namespace zevrpp::app {

std::string to_json(const model::FleetSolution& s);
model::FleetSolution from_json(const std::string& text);  // throws std::invalid_argument

std::string solutions_to_json(const std::vector<model::FleetSolution>& all);
std::vector<model::FleetSolution> solutions_from_json(const std::string& text);

// Design table: N_rt, N_vessel, L, L_sup, V_GT, E_batt, t_cell per case and service.
std::string design_csv(const std::vector<model::FleetSolution>& all);
// Leg speeds per outbound leg, inbound speed in brackets: "21.6 (21.6)".
std::string speeds_csv(const std::vector<model::FleetSolution>& all);
// One row per case, one column per port, MW.
std::string chargers_csv(const std::vector<model::FleetSolution>& all);
std::string costs_csv(const std::vector<model::FleetSolution>& all);

std::string speed_pair(double out_kn, double in_kn);

// Human-readable tables.
std::string table_text(const std::vector<model::FleetSolution>& all);

// Checks a solution read back from disk: finite values, integral counts,
// cost terms summing to the objective. Throws std::invalid_argument.
void check_report(const model::FleetSolution& s);

std::string sweep_csv(const std::string& param, const std::vector<SweepPoint>& points);

}  // namespace zevrpp::app
