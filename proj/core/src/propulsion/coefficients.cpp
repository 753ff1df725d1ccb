#include "zevrpp/propulsion/coefficients.hpp"

#include <fmt/format.h>

#include <stdexcept>

#include "zevrpp/io/ini.hpp"

namespace zevrpp::propulsion {

namespace {

template <size_t N>
void read_array(const io::Ini& ini, const std::string& sec, const std::string& key, std::array<double, N>& out) {
  auto v = ini.numbers(sec, key);
  if (v.size() != N) throw std::runtime_error(fmt::format("{}: expected {} numbers, got {}", ini.where(sec, key), N, v.size()));
  for (size_t i = 0; i < N; ++i) out[i] = v[i];
}

void reject_unknown(const io::Ini& ini, const std::string& sec, const std::vector<std::string>& known) {
  for (auto& k : ini.unknown_keys(sec, known)) throw std::runtime_error(ini.where(sec, k) + ": unknown key");
}

}  // namespace

ResistanceCoefficients load_resistance(const std::string& path) {
  auto ini = io::Ini::load(path);
  ResistanceCoefficients c;
  const std::string s = "resistance";
  if (!ini.has_section(s)) throw std::runtime_error(path + ": missing [resistance] section");
  reject_unknown(ini, s, {"omega0", "omega1", "omega2", "theta", "psi1", "psi2", "kappa", "dp_over_t", "n_rudders",
                          "cr_scale", "cf_scale", "fr_lo", "fr_hi", "rho_sw", "nu", "g"});
  read_array(ini, s, "omega0", c.omega[0]);
  read_array(ini, s, "omega1", c.omega[1]);
  read_array(ini, s, "omega2", c.omega[2]);
  read_array(ini, s, "theta", c.theta);
  read_array(ini, s, "kappa", c.kappa);
  c.psi1 = ini.number_in(s, "psi1", c.psi1, 1e-12, 1e12);
  c.psi2 = ini.number(s, "psi2", c.psi2);
  c.dp_over_t = ini.number_in(s, "dp_over_t", c.dp_over_t, 1e-6, 10);
  c.n_rudders = ini.number_in(s, "n_rudders", c.n_rudders, 1, 4);
  c.cr_scale = ini.number_in(s, "cr_scale", c.cr_scale, 1e-12, 1e12);
  c.cf_scale = ini.number_in(s, "cf_scale", c.cf_scale, 1e-12, 1e12);
  c.fr_lo = ini.number_in(s, "fr_lo", c.fr_lo, 1e-3, 2);
  c.fr_hi = ini.number_in(s, "fr_hi", c.fr_hi, c.fr_lo, 2);
  c.rho_sw = ini.number_in(s, "rho_sw", c.rho_sw, 1, 1e5);
  c.nu = ini.number_in(s, "nu", c.nu, 1e-9, 1);
  c.g = ini.number_in(s, "g", c.g, 1, 100);
  return c;
}

DegradationParams load_degradation(const std::string& path) {
  auto ini = io::Ini::load(path);
  DegradationParams d;
  const std::string s = "degradation";
  if (!ini.has_section(s)) throw std::runtime_error(path + ": missing [degradation] section");
  reject_unknown(ini, s, {"chi1", "chi2", "chi3", "chi4", "e_a", "r_g", "t_cell", "phi_max", "v_cell", "q_cell_ah"});
  d.chi1 = ini.number_in(s, "chi1", d.chi1, 1e-6, 10);
  d.chi2 = ini.number_in(s, "chi2", d.chi2, 0, 1e12);
  d.chi3 = ini.number_in(s, "chi3", d.chi3, 0, 1e12);
  d.chi4 = ini.number_in(s, "chi4", d.chi4, 0, 1e12);
  d.e_a = ini.number_in(s, "e_a", d.e_a, 0, 1e9);
  d.r_g = ini.number_in(s, "r_g", d.r_g, 1e-6, 1e6);
  d.t_cell = ini.number_in(s, "t_cell", d.t_cell, 1, 1e4);
  d.phi_max = ini.number_in(s, "phi_max", d.phi_max, 1e-9, 100);
  d.v_cell = ini.number_in(s, "v_cell", d.v_cell, 1e-3, 1e3);
  d.q_cell_ah = ini.number_in(s, "q_cell_ah", d.q_cell_ah, 1e-6, 1e6);
  if (d.chi2 + d.chi3 <= 0) throw std::runtime_error(ini.where(s, "chi2") + ": chi2 + chi3/2 must be positive");
  return d;
}

}  // namespace zevrpp::propulsion
