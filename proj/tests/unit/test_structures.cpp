#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "zevrpp/hull/hydrostatics.hpp"
#include "zevrpp/oracles/convexity.hpp"
#include "zevrpp/oracles/girder_tables.hpp"
#include "zevrpp/structures/girder.hpp"

using namespace zevrpp;
using namespace zevrpp::structures;
using oracles::Rational;

namespace {
double as_double(Rational r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }
}  // namespace

TEST(GirderTables, ExactCoefficients) {
  for (auto [B, D, p] : {std::tuple{Rational(1), Rational(1), Rational(1)},
                         std::tuple{Rational(30), Rational(15), Rational(12, 1000)},
                         std::tuple{Rational(7, 2), Rational(5, 3), Rational(1, 50)}}) {
    auto g = oracles::girder_from_tables(B, D, p);
    EXPECT_EQ(g.z_na / D, Rational(2, 5));
    EXPECT_EQ(g.inertia / (p * B * D * D), Rational(133, 150));
    Rational unit = B * D * p / g.inertia;
    EXPECT_EQ(g.q_b / unit, Rational(-3, 20));
    EXPECT_EQ((g.q_ad + g.q_cd) / unit, Rational(-21, 80));
    EXPECT_EQ(g.q_e / unit, Rational(-53, 200));
  }
}

TEST(Section, MatchesTables) {
  gp::Problem pr;
  auto B = pr.add_var("B"), D = pr.add_var("D"), p = pr.add_var("p_td");
  auto s = section_properties(B, D, p);
  auto g = oracles::girder_from_tables(30, 15, Rational(12, 1000));
  gp::Assignment a{{B.id, 30}, {D.id, 15}, {p.id, 0.012}};
  EXPECT_NEAR(gp::evaluate(s.z_na, a), as_double(g.z_na), 1e-12);
  EXPECT_NEAR(gp::evaluate(s.inertia, a), as_double(g.inertia), 1e-12);
  EXPECT_NEAR(gp::evaluate(s.inertia, a), 71.82, 1e-10);
  EXPECT_NEAR(gp::evaluate(s.z_deck, a), 133.0 / 90 * 0.012 * 30 * 15, 1e-12);
  EXPECT_NEAR(gp::evaluate(shear_flow_max(B, D, p), a), -as_double(g.q_e), 1e-14);
  EXPECT_NEAR(shear_flow_max(30, 15, 0.012), 0.01992, 5e-6);
  auto v = section_values(30, 15, 0.012);
  EXPECT_LT(v.z_na, 15.0 / 2);  // deck is the extreme fibre
  EXPECT_DOUBLE_EQ(v.p_sp, gp::evaluate(s.p_sp, a));
  EXPECT_DOUBLE_EQ(gp::evaluate(s.p_bh, a), 2 * v.p_sp);
  EXPECT_DOUBLE_EQ(gp::evaluate(s.p_bp, a), 0.008);
}

TEST(Section, ShearStressReducesToBp) {
  gp::Problem pr;
  auto B = pr.add_var("B"), D = pr.add_var("D"), p = pr.add_var("p_td");
  auto s = section_properties(B, D, p);
  gp::Monomial r = shear_flow_max(B, D, p) / s.p_sp;
  EXPECT_DOUBLE_EQ(r.exponent(B.id), -1.0);
  EXPECT_DOUBLE_EQ(r.exponent(D.id), 0.0);
  EXPECT_DOUBLE_EQ(r.exponent(p.id), -1.0);
  EXPECT_NEAR(r.coeff(), as_double(Rational(53, 100) * Rational(150, 133)), 1e-14);
}

TEST(Loads, RuleFormulas) {
  EXPECT_NEAR(stillwater_moment(200, 30, 0.7), 79296.0, 1e-8);
  EXPECT_NEAR(phi_hog(0.7), 0.95, 1e-15);
  EXPECT_DOUBLE_EQ(wave_moment_factor(0.7), 1.1);
  EXPECT_NEAR(phi_hog(0.9625), 1.1, 1e-14);
  EXPECT_DOUBLE_EQ(wave_moment_factor(hull::block_coefficient(1e6)), 1.1);
  EXPECT_NEAR(design_moment(200, 30, 0.7), (1.1 * 0.975 + 0.0472) * 4e4 * 30 * 1.4, 1e-8);
  EXPECT_NEAR(design_shear(200, 30, 0.7), (1.6 * 0.0472 + 0.3) * 200 * 30 * 1.4, 1e-9);
}

TEST(Loads, ShearFromParabolicMoment) {
  // M(y) = 4 M y (L - y) / L^2, V = dM/dy at 0.3 L
  double L = 180, M = stillwater_moment(L, 28, 0.62), h = 1e-4, y = 0.3 * L;
  auto m = [&](double s) { return 4 * M * s * (L - s) / (L * L); };
  double v = (m(y + h) - m(y - h)) / (2 * h);
  LoadParams zero_wave;
  zero_wave.phi_v = 0;
  EXPECT_NEAR(design_shear(L, 28, 0.62, zero_wave), v, 1e-6 * v);
}

TEST(Strength, Constraints) {
  gp::Problem pr;
  auto L = pr.add_var("L"), B = pr.add_var("B"), D = pr.add_var("D"), p = pr.add_var("p_td");
  double cb = hull::block_coefficient(6);
  auto cs = strength_constraints(L, B, D, p, cb);
  ASSERT_EQ(cs.size(), 2u);
  gp::Assignment a{{L.id, 150}, {B.id, 25}, {D.id, 14}, {p.id, 0.015}};
  double sigma = gp::evaluate(cs[0].expr, a) * 175, tau = gp::evaluate(cs[1].expr, a) * 110;
  EXPECT_NEAR(sigma, 1e-3 * design_moment(150, 25, cb) / section_values(25, 14, 0.015).z_deck, 1e-9);
  EXPECT_NEAR(tau, 1e-3 * shear_flow_max(25, 14, 0.015) * design_shear(150, 25, cb) / section_values(25, 14, 0.015).p_sp,
              1e-9);
  a[p.id] = 0.03;
  EXPECT_NEAR(gp::evaluate(cs[0].expr, a) * 175, sigma / 2, 1e-9);
  std::mt19937_64 rng(11);
  for (auto& c : cs) {
    EXPECT_EQ(c.form, gp::ConstraintForm::PosyLE1);
    auto r = oracles::sample_convexity(c, rng, 1000);
    EXPECT_LE(r.worst, 1e-12);
  }
}

TEST(Stillwater, UniformIsZero) {
  auto d = stillwater_distribution(100, {{500, 0, 100}}, {{500, 0, 100}}, 200);
  for (size_t i = 0; i < d.y.size(); ++i) {
    EXPECT_NEAR(d.shear[i], 0, 1e-9);
    EXPECT_NEAR(d.moment[i], 0, 1e-9);
  }
}

TEST(Stillwater, RectangleBeam) {
  // weight 2/m on [4,6], buoyancy 1/m on [3,7]
  auto d = stillwater_distribution(10, {{4, 4, 6}}, {{4, 3, 7}}, 200);
  auto V = [](double y) {
    if (y <= 3 || y >= 7) return 0.0;
    if (y <= 4) return -(y - 3);
    if (y <= 6) return -1 + (y - 4);
    return 1 - (y - 6);
  };
  auto M = [](double y) {
    if (y <= 3 || y >= 7) return 0.0;
    if (y <= 4) return -(y - 3) * (y - 3) / 2;
    if (y <= 6) return -0.5 - (y - 4) + (y - 4) * (y - 4) / 2;
    return -0.5 + (y - 6) - (y - 6) * (y - 6) / 2;
  };
  for (size_t i = 0; i < d.y.size(); ++i) {
    EXPECT_NEAR(d.shear[i], V(d.y[i]), 1e-12) << d.y[i];
    EXPECT_NEAR(d.moment[i], M(d.y[i]), 1e-12) << d.y[i];
  }
  EXPECT_THROW(stillwater_distribution(10, {{4, 4, 6}}, {{4, 4, 8}}, 200), std::runtime_error);
  EXPECT_THROW(stillwater_distribution(10, {{4, 4, 6}}, {{4, 3, 7}}, 100), std::invalid_argument);
}

namespace {

// Uniform steel (0.3), superstructure over 0.8 L (0.1), deadweight and outfit
// following the section area (0.45), three adjoining 0.23 L battery rooms
// (0.15) placed so the weight centroid sits on the buoyancy centroid.
constexpr double kFollow = 0.45;

std::vector<WeightBlock> balanced_blocks(const hull::HullParams& h, double rho) {
  double disp = rho * hull::block_coefficient(h.beta) * h.L * h.B * h.T;
  double lcb = hull::lcb_fraction(h.beta) * h.L;
  double room = 0.23 * h.L;
  std::vector<WeightBlock> b = {{0.3 * disp, 0, h.L}, {0.1 * disp, 0.1 * h.L, 0.9 * h.L}};
  double moment = 0.4 * disp * 0.5 * h.L + kFollow * disp * lcb;
  double c = (disp * lcb - moment) / (0.15 * disp);
  for (int k = -1; k <= 1; ++k) {
    double mid = c + k * room;
    b.push_back({0.15 * disp / 3, mid - room / 2, mid + room / 2});
  }
  return b;
}

}  // namespace

TEST(Stillwater, BalancedDesign) {
  hull::HullParams h{150, 25, 6, 14, 6};
  const double rho = 1.025, g = 9.81;
  double disp = rho * hull::block_coefficient(h.beta) * h.L * h.B * h.T;
  auto blocks = balanced_blocks(h, rho);
  auto d = stillwater_distribution(h, blocks, rho, 400, kFollow * disp);
  EXPECT_EQ(d.shear.front(), 0.0);
  EXPECT_EQ(d.moment.front(), 0.0);
  double mmax = 0;
  for (double m : d.moment) mmax = std::max(mmax, std::abs(m));
  double rule = stillwater_moment(h.L, h.B, hull::block_coefficient(h.beta));
  double ratio = mmax * g / rule;
  EXPECT_GE(ratio, 0.3);
  EXPECT_LE(ratio, 3.0);
  // shear recovered from the moment by central differences on smooth cells
  int checked = 0;
  double vmax = *std::max_element(d.shear.begin(), d.shear.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  for (size_t i = 2; i + 2 < d.y.size(); ++i) {
    double dy = d.y[i] - d.y[i - 1];
    bool smooth = d.y[i] > 0.05 * h.L && std::abs(d.y[i] - h.L / 2) > 2 * dy;
    for (auto& b : blocks)
      for (double e : {b.start, b.end})
        if (std::abs(e - d.y[i]) <= 2 * dy) smooth = false;
    if (!smooth) continue;
    double dm = (d.moment[i + 1] - d.moment[i - 1]) / (2 * dy);
    EXPECT_LE(std::abs(dm - d.shear[i]), 1e-3 * std::abs(vmax)) << d.y[i];
    ++checked;
  }
  EXPECT_GT(checked, 100);
  std::ostringstream os;
  write_csv(os, d);
  auto csv = os.str();
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 402);
}

TEST(Stillwater, UnbalancedThrows) {
  hull::HullParams h{150, 25, 6, 14, 6};
  auto blocks = balanced_blocks(h, 1.025);
  double disp = 1.025 * hull::block_coefficient(h.beta) * h.L * h.B * h.T;
  EXPECT_NO_THROW(stillwater_distribution(h, blocks, 1.025, 400, kFollow * disp));
  blocks[0].weight *= 1.2;
  EXPECT_THROW(stillwater_distribution(h, blocks, 1.025, 400, kFollow * disp), std::runtime_error);
}
