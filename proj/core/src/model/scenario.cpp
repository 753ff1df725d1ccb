#include "zevrpp/model/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>
#include <stdexcept>

#include "zevrpp/io/ini.hpp"

namespace zevrpp::model {

namespace fs = std::filesystem;

std::string to_string(FleetMode m) {
  switch (m) {
    case FleetMode::Baseline: return "baseline";
    case FleetMode::Uniform: return "uniform";
    case FleetMode::Mixed: return "mixed";
  }
  return "?";
}

FleetMode parse_mode(const std::string& s) {
  if (s == "baseline") return FleetMode::Baseline;
  if (s == "uniform") return FleetMode::Uniform;
  if (s == "mixed") return FleetMode::Mixed;
  throw std::invalid_argument("unknown fleet mode '" + s + "' (baseline, uniform, mixed)");
}

void Scenario::validate() const {
  const int n = plan.n_ports();
  const size_t nc = demand.cargo.size();
  if (n < 2) throw std::invalid_argument("scenario needs at least two ports");
  if (demand.cargo != std::vector<std::string>{"pax", "roro"})
    throw std::invalid_argument("cargo types must be 'pax, roro'");
  if (plan.services.empty()) throw std::invalid_argument("scenario has no routes");
  if (t_unit.size() != nc || value.size() != nc)
    throw std::invalid_argument(fmt::format("t_unit and value need one entry per cargo ({})", nc));
  if (c_port.size() != static_cast<size_t>(n) || c_el.size() != static_cast<size_t>(n))
    throw std::invalid_argument(fmt::format("c_port and c_el need one entry per port ({})", n));
  for (auto& [e, d] : plan.distance_nm)
    if (!(d > 0)) throw std::invalid_argument(fmt::format("distance {}-{} must be positive", e.first, e.second));
  for (auto& [k, f] : demand.f) {
    auto [i, j, c] = k;
    if (i < 1 || i > n || j < 1 || j > n || i == j || c < 0 || c >= static_cast<int>(nc))
      throw std::invalid_argument(fmt::format("demand entry {}-{} cargo {} is out of range", i, j, c));
    if (!(f >= 0)) throw std::invalid_argument(fmt::format("demand {}-{} must be nonnegative", i, j));
  }
  if (mode == FleetMode::Baseline && baseline.size() != plan.services.size())
    throw std::invalid_argument("baseline mode needs n_rt, n_vessel, L and L_sup for every route");
  if (static_cast<int>(prm.n_rooms) % 2 == 0 || prm.n_rooms < 1 || prm.n_rooms != std::floor(prm.n_rooms))
    throw std::invalid_argument("n_rooms must be an odd integer");
  if (!(prm.theta_u > 0 && prm.theta_u <= 1)) throw std::invalid_argument("theta_u must lie in (0, 1]");
  if (!(prm.demand_scale > 0)) throw std::invalid_argument("demand_scale must be positive");
  for (size_t i = 0; i < c_port.size(); ++i)
    if (!(c_port[i] >= 0) || !(c_el[i] >= 0))
      throw std::invalid_argument(fmt::format("port {} prices must be nonnegative", i + 1));
  static const std::set<std::string> may_be_zero{"c_hotel", "c_deck", "c_batt",    "k_batt",
                                                 "c_steel", "c_cha",  "freshwater"};
  for (auto& spec : param_specs()) {
    double v = prm.*(spec.field);
    if (may_be_zero.count(spec.name) ? !(v >= 0) : !(v > 0))
      throw std::invalid_argument(fmt::format("parameter {} = {} must be {}", spec.name, v,
                                              may_be_zero.count(spec.name) ? "nonnegative" : "positive"));
  }
  for (auto& b : baseline)
    if (b.n_rt < 1 || b.n_vessel < 1 || b.n_rt != std::floor(b.n_rt) || b.n_vessel != std::floor(b.n_vessel) ||
        !(b.L > 0) || !(b.L_sup > 0))
      throw std::invalid_argument("baseline values must be positive with integer n_rt and n_vessel");
}

namespace {

std::string trim(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

int port_number(const std::string& tok, int n, const std::string& where) {
  size_t used = 0;
  int p = 0;
  try {
    p = std::stoi(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || p < 1 || p > n) throw std::runtime_error(fmt::format("{}: bad port '{}'", where, tok));
  return p;
}

network::Arc parse_pair(const std::string& key, int n, const std::string& where) {
  auto parts = split(key, '-');
  if (parts.size() != 2) throw std::runtime_error(fmt::format("{}: expected 'i-j'", where));
  return {port_number(parts[0], n, where), port_number(parts[1], n, where)};
}

void reject_unknown(const io::Ini& ini, const std::string& sec, const std::vector<std::string>& known) {
  auto bad = ini.unknown_keys(sec, known);
  if (!bad.empty()) throw std::runtime_error(ini.where(sec, bad.front()) + ": unknown key");
}

std::vector<double> sized(const io::Ini& ini, const std::string& sec, const std::string& key, size_t n) {
  auto v = ini.numbers(sec, key);
  if (v.size() != n) throw std::runtime_error(fmt::format("{}: expected {} values, got {}", ini.where(sec, key), n, v.size()));
  return v;
}

std::string resolve(const std::string& base, const std::string& rel) {
  if (rel.empty() || fs::path(rel).is_absolute()) return rel;
  return (fs::path(base).parent_path() / rel).string();
}

void read_params(const io::Ini& ini, const std::string& sec, ModelParams& prm, const std::vector<std::string>& skip) {
  for (auto& key : ini.keys(sec)) {
    if (std::find(skip.begin(), skip.end(), key) != skip.end()) continue;
    if (!find_param(key)) throw std::runtime_error(ini.where(sec, key) + ": unknown parameter");
    param_ref(prm, key) = ini.number(sec, key);
  }
}

}  // namespace

std::vector<std::string> list_cases(const std::string& path) {
  auto ini = io::Ini::load(path);
  std::vector<std::string> out;
  for (auto& s : ini.sections())
    if (s.rfind("case.", 0) == 0) out.push_back(s.substr(5));
  return out;
}

Scenario load_scenario(const std::string& path, const std::string& case_id) {
  auto ini = io::Ini::load(path);
  Scenario sc;
  for (const char* sec : {"scenario", "ports", "distances", "cargo"})
    if (!ini.has_section(sec)) throw std::runtime_error(fmt::format("{}: missing [{}] section", path, sec));

  reject_unknown(ini, "scenario", {"name", "cargo", "params", "resistance", "degradation", "fits"});
  if (auto b = ini.text("scenario", "params", ""); !b.empty()) {
    auto base = io::Ini::load(resolve(path, b));
    if (!base.has_section("params")) throw std::runtime_error(base.path() + ": missing [params] section");
    read_params(base, "params", sc.prm, {});
  }
  sc.name = ini.text("scenario", "name", fs::path(path).stem().string());
  sc.demand.cargo = split(ini.text("scenario", "cargo"), ',');
  if (sc.demand.cargo.empty()) throw std::runtime_error(ini.where("scenario", "cargo") + ": no cargo types");
  if (auto r = ini.text("scenario", "resistance", ""); !r.empty())
    sc.resistance = propulsion::load_resistance(resolve(path, r));
  if (auto d = ini.text("scenario", "degradation", ""); !d.empty())
    sc.degradation = propulsion::load_degradation(resolve(path, d));
  sc.fits_path = resolve(path, ini.text("scenario", "fits", ""));

  reject_unknown(ini, "ports", {"names", "c_port", "c_el"});
  sc.plan.port_names = split(ini.text("ports", "names"), ',');
  const int n = sc.plan.n_ports();
  if (n < 2) throw std::runtime_error(ini.where("ports", "names") + ": need at least two ports");
  sc.c_port = sized(ini, "ports", "c_port", static_cast<size_t>(n));
  sc.c_el = sized(ini, "ports", "c_el", static_cast<size_t>(n));

  for (auto& key : ini.keys("distances")) {
    auto w = ini.where("distances", key);
    auto [i, j] = parse_pair(key, n, w);
    if (i == j) throw std::runtime_error(w + ": ports must differ");
    double d = ini.number("distances", key);
    if (!(d > 0)) throw std::runtime_error(w + ": distance must be positive");
    sc.plan.distance_nm[{std::min(i, j), std::max(i, j)}] = d;
  }

  const size_t nc = sc.demand.cargo.size();
  reject_unknown(ini, "cargo", {"t_unit", "value"});
  sc.t_unit = sized(ini, "cargo", "t_unit", nc);
  sc.value = ini.has("cargo", "value") ? sized(ini, "cargo", "value", nc) : std::vector<double>(nc, 1.0);
  for (size_t c = 0; c < nc; ++c) {
    auto sec = "demand." + sc.demand.cargo[c];
    if (!ini.has_section(sec)) throw std::runtime_error(fmt::format("{}: missing [{}] section", path, sec));
    for (auto& key : ini.keys(sec)) {
      auto w = ini.where(sec, key);
      auto [i, j] = parse_pair(key, n, w);
      if (i == j) throw std::runtime_error(w + ": ports must differ");
      double f = ini.number(sec, key);
      if (!(f >= 0)) throw std::runtime_error(w + ": demand must be nonnegative");
      sc.demand.f[{i, j, static_cast<int>(c)}] = f;
    }
  }

  if (ini.has_section("params")) read_params(ini, "params", sc.prm, {});

  const std::string cs = "case." + case_id;
  if (!ini.has_section(cs)) {
    std::string known;
    for (auto& c : list_cases(path)) known += " " + c;
    throw std::runtime_error(fmt::format("{}: no case '{}' (available:{})", path, case_id, known));
  }
  sc.case_label = case_id;
  sc.mode = parse_mode(ini.text(cs, "mode", "mixed"));
  for (auto& r : split(ini.text(cs, "routes"), ',')) {
    network::Service svc;
    for (auto& p : split(r, '-')) svc.ports.push_back(port_number(p, n, ini.where(cs, "routes")));
    for (int p : svc.ports) svc.name += std::to_string(p);
    sc.plan.services.push_back(svc);
  }
  const std::vector<std::string> case_keys = {"mode", "routes", "n_rt", "n_vessel", "L", "L_sup", "u_min"};
  if (sc.mode == FleetMode::Baseline) {
    const size_t ns = sc.plan.services.size();
    auto nrt = sized(ini, cs, "n_rt", ns), nv = sized(ini, cs, "n_vessel", ns);
    auto L = sized(ini, cs, "L", ns), ls = sized(ini, cs, "L_sup", ns);
    for (size_t s = 0; s < ns; ++s) sc.baseline.push_back({nrt[s], nv[s], L[s], ls[s]});
  } else {
    for (const char* k : {"n_rt", "n_vessel", "L", "L_sup"})
      if (ini.has(cs, k)) throw std::runtime_error(ini.where(cs, k) + ": only allowed in baseline mode");
  }
  if (ini.has(cs, "u_min")) sc.u_min = ini.number(cs, "u_min");
  read_params(ini, cs, sc.prm, case_keys);

  try {
    sc.validate();
    network::build_index_sets(sc.plan);
  } catch (const std::exception& e) {
    throw std::runtime_error(fmt::format("{} [{}]: {}", path, cs, e.what()));
  }
  return sc;
}

}  // namespace zevrpp::model
