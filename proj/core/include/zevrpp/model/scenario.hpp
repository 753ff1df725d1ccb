#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zevrpp/model/params.hpp"
#include "zevrpp/network/network.hpp"
#include "zevrpp/propulsion/coefficients.hpp"

namespace zevrpp::model {

enum class FleetMode { Baseline, Uniform, Mixed };

std::string to_string(FleetMode m);
FleetMode parse_mode(const std::string& s);  // throws std::invalid_argument

// Values pinned in baseline mode.
struct BaselineDesign {
  double n_rt = 1, n_vessel = 1, L = 100, L_sup = 80;
};

struct Scenario {
  std::string name;
  std::string case_label;
  FleetMode mode = FleetMode::Mixed;
  network::RoutePlan plan;
  network::Demand demand;
  std::vector<double> t_unit;  // s per demand unit, per cargo
  std::vector<double> value;   // per cargo
  std::vector<double> c_port;  // EUR per GT per call, per port
  std::vector<double> c_el;    // EUR/MWh, per port
  std::vector<BaselineDesign> baseline;  // per service, baseline mode only
  std::optional<double> u_min;           // defaults to the equal-share target
  ModelParams prm;
  propulsion::ResistanceCoefficients resistance;
  propulsion::DegradationParams degradation;
  std::string fits_path;  // optional precomputed fits

  // Throws std::invalid_argument describing the first inconsistency.
  void validate() const;
};


// Scenario file: shared sections plus one [case.<id>] section per case.
std::vector<std::string> list_cases(const std::string& path);
Scenario load_scenario(const std::string& path, const std::string& case_id);

}  // namespace zevrpp::model
