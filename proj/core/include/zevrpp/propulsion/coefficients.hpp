#pragma once

#include <array>
#include <string>

namespace zevrpp::propulsion {

// Hollenbach-type residual resistance constants (mean single-screw set) plus
// ITTC-57 friction and fluid properties.
struct ResistanceCoefficients {
  // C_R^std = sum_i C_B^i (omega[i][0] + omega[i][1] Fr + omega[i][2] Fr^2)
  std::array<std::array<double, 3>, 3> omega{{{-0.57424, 13.3893, 90.5960},
                                              {4.6614, -39.721, -351.483},
                                              {-1.14215, -12.3296, 459.254}}};
  std::array<double, 3> theta{0.854, -1.228, 0.497};  // Fr_crit
  double psi1 = 2.1701;                                 // k_L = psi1 L^psi2
  double psi2 = -0.1602;
  std::array<double, 4> kappa{-0.3382, 0.8086, 0.0146, 0.0};  // T/B, B/L, D_P/T, N_rud
  double dp_over_t = 0.7;
  double n_rudders = 1.0;
  double cr_scale = 0.1;   // reference area B T / 10
  double cf_scale = 1e-3;  // the printed 75 is 1e3 C_F
  double fr_lo = 0.15;     // surrogate validity range
  double fr_hi = 0.38;
  double rho_sw = 1025.0;  // kg/m^3
  double nu = 1.188e-6;    // m^2/s
  double g = 9.81;
};

ResistanceCoefficients load_resistance(const std::string& path);

// Semi-empirical LFP cell fade: phi in percent, throughput in Ah, rate in 1/h.
struct DegradationParams {
  double chi1 = 0.57;
  double chi2 = 7411.2;
  double chi3 = 2896.6;
  double chi4 = 152.5;
  double e_a = 31500.0;  // J/mol
  double r_g = 8.314;    // J/(mol K)
  double t_cell = 298.15;
  double phi_max = 20.0;
  double v_cell = 3.3;
  double q_cell_ah = 2.3;
};

DegradationParams load_degradation(const std::string& path);

}  // namespace zevrpp::propulsion
