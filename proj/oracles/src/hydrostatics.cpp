#include "zevrpp/oracles/hydrostatics.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace zevrpp::oracles {

using boost::math::quadrature::gauss_kronrod;
using hull::HullParams;
using hull::Section;

namespace {

template <class F>
double gk(F f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14);
}

template <class F>
double ts(F f, double a, double b) {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, 1e-14);
}

// ∫∫ w(y_fp, z) 2H dz dy over both bodies, y_fp measured from the forward perpendicular.
template <class W>
double body_integral(const HullParams& h, W weight) {
  auto fore = [&](double y) {
    if (y <= 0) return 0.0;
    return ts([&](double z) { return weight(y, z) * 2 * hull::offset(Section::Fore, y, z, h); }, 0.0, h.T);
  };
  auto aft = [&](double y) {
    if (y >= h.L / 2) return 0.0;
    return ts([&](double z) { return weight(h.L / 2 + y, z) * 2 * hull::offset(Section::Aft, y, z, h); }, 0.0,
              h.T);
  };
  return ts(fore, 0.0, h.L / 2) + ts(aft, 0.0, h.L / 2);
}

}  // namespace

double volume_quad(const HullParams& h) {
  return body_integral(h, [](double, double) { return 1.0; });
}

double block_coefficient_quad(double beta) {
  HullParams h{1, 1, 1, 1, beta};
  return volume_quad(h);
}

double kb_fraction_quad(double beta) {
  HullParams h{1, 1, 1, 1, beta};
  return body_integral(h, [](double, double z) { return z; }) / volume_quad(h);
}

double lcb_fraction_quad(double beta) {
  HullParams h{1, 1, 1, 1, beta};
  return body_integral(h, [](double y, double) { return y; }) / volume_quad(h);
}

double waterplane_inertia_quad(const HullParams& h) {
  auto cube = [](double v) { return v * v * v; };
  auto fore = [&](double y) { return cube(hull::offset(Section::Fore, y, h.T, h)); };
  auto aft = [&](double y) { return y >= h.L / 2 ? cube(h.B / 2) : cube(hull::offset(Section::Aft, y, h.T, h)); };
  return 2.0 / 3.0 * (gk(fore, 0.0, h.L / 2) + gk(aft, 0.0, h.L / 2));
}

double bulkhead_area_quad(double l_k, double h_roro, const HullParams& h) {
  // Offsets extended above the waterline with the same power law.
  auto half = [&](double z) {
    return h.B / 2 * std::sqrt(2 * l_k / h.L) * std::pow(z / h.T, 1 / h.beta);
  };
  return 2 * ts(half, 0.0, h_roro);
}

double midship_arc_quad(double B, double T, double beta) {
  return ts([&](double x) { return hull::midship_arc_integrand(x, B, T, beta); }, 0.0, B / 2);
}

}  // namespace zevrpp::oracles
