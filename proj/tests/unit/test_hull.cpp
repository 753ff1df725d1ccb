#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "zevrpp/hull/constraints.hpp"
#include "zevrpp/hull/hydrostatics.hpp"
#include "zevrpp/oracles/convexity.hpp"
#include "zevrpp/oracles/hydrostatics.hpp"

using namespace zevrpp;
using namespace zevrpp::hull;

namespace {
const double kBetas[] = {2, 4, 6, 8, 12};
HullParams ship(double beta) { return {150, 30, 7, 15, beta}; }
}  // namespace

TEST(Offset, ForeBoundaries) {
  auto h = ship(6);
  EXPECT_DOUBLE_EQ(offset(Section::Fore, h.L / 2, h.T, h), h.B / 2);
  EXPECT_NEAR(offset(Section::Fore, h.L / 8, h.T, h), h.B / 4, 1e-12);
  EXPECT_THROW(offset(Section::Fore, h.L, 1, h), std::out_of_range);
  EXPECT_THROW(offset(Section::Aft, h.L / 2, 1, h), std::out_of_range);
}

TEST(Offset, AftSectionLimits) {
  auto h = ship(6);
  for (double z : {0.5, 3.0, 6.9})
    EXPECT_DOUBLE_EQ(offset(Section::Aft, 0, z, h), offset(Section::Fore, h.L / 2, z, h));
  EXPECT_LT(offset(Section::Aft, 0.4999 * h.L, 6.0, h), 1e-50);
  EXPECT_DOUBLE_EQ(offset(Section::Aft, 0.4999 * h.L, h.T, h), h.B / 2);
}

TEST(BlockCoefficient, ValuesAndLimit) {
  EXPECT_NEAR(block_coefficient(6), 0.623555, 5e-7);
  EXPECT_NEAR(block_coefficient(1e12), 5.0 / 6, 1e-10);
  for (double b = 1.5; b < 30; b += 0.5) EXPECT_LT(block_coefficient(b), block_coefficient(b + 0.5));
}

TEST(Hydrostatics, ClosedFormsMatchQuadrature) {
  for (double b : kBetas) {
    auto h = ship(b);
    EXPECT_NEAR(block_coefficient(b) / oracles::block_coefficient_quad(b), 1, 1e-6) << b;
    EXPECT_NEAR(h.L * h.B * h.T * block_coefficient(b) / oracles::volume_quad(h), 1, 1e-6) << b;
    EXPECT_NEAR(kb_fraction(b) / oracles::kb_fraction_quad(b), 1, 1e-6) << b;
    EXPECT_NEAR(lcb_fraction(b) / oracles::lcb_fraction_quad(b), 1, 1e-6) << b;
    EXPECT_NEAR(waterplane_inertia(h.L, h.B) / oracles::waterplane_inertia_quad(h), 1, 1e-8) << b;
    EXPECT_NEAR(bulkhead_area(40, 9, h) / oracles::bulkhead_area_quad(40, 9, h), 1, 1e-6) << b;
  }
}

TEST(Hydrostatics, CentroidBrackets) {
  double kb = kb_fraction(6);
  EXPECT_GT(kb, 0.50);
  EXPECT_LT(kb, 0.58);
  // Fore body alone: (1 + 1/b)/(2 + 1/b) = 7/13 at b = 6.
  EXPECT_NEAR((1 + 1.0 / 6) / (2 + 1.0 / 6), 7.0 / 13, 1e-15);
  EXPECT_GT(lcb_fraction(6), 0.5);
  EXPECT_LT(lcb_fraction(6), 0.6);
  EXPECT_NEAR(lcb_fraction_printed(6), 2 * oracles::lcb_fraction_quad(6), 1e-9);
}

TEST(Hydrostatics, MetacentreRadius) {
  EXPECT_NEAR(bm_height(30, 7, 6), 7 * 900 / (120 * 0.623555106626 * 7), 1e-9);
  EXPECT_GT(bm_height(30, 6, 6), bm_height(30, 7, 6));
  gp::Problem p;
  auto hv = add_hull_vars(p, "");
  gp::Assignment x{{hv.L.id, 150}, {hv.B.id, 30}, {hv.T.id, 7}, {hv.D.id, 15}};
  EXPECT_NEAR(gp::evaluate(bm_monomial(hv, 6), x), bm_height(30, 7, 6), 1e-12);
}

TEST(Bulkhead, BoundaryValues) {
  auto h = ship(6);
  EXPECT_NEAR(bulkhead_area(h.L / 2, h.T, h), 6.0 / 7 * h.T * h.B, 1e-12);
  EXPECT_NEAR(bulkhead_area(h.L / 8, h.T, h), 0.5 * bulkhead_area(h.L / 2, h.T, h), 1e-12);
  EXPECT_THROW(bulkhead_area(0.6 * h.L, h.T, h), std::out_of_range);
  EXPECT_NEAR(bulkhead_area(40, 8, h) / oracles::bulkhead_area_quad(40, 8, h), 1, 1e-10);
}

TEST(WettedArea, SimpsonRule) {
  // beta = 1: straight wall, constant integrand.
  EXPECT_NEAR(midship_arc_simpson(30, 7, 1), std::hypot(15.0, 7.0), 1e-12);
  EXPECT_NEAR(midship_arc_simpson(30, 7, 2) / oracles::midship_arc_quad(30, 7, 2), 1, 1e-4);
  double s = midship_arc_simpson(30, 7, 6), q = oracles::midship_arc_quad(30, 7, 6);
  EXPECT_GE(s, q);
  EXPECT_LE(s / q - 1, 0.04);
}

TEST(WettedArea, ConstraintsReproduceSimpson) {
  gp::Problem p;
  auto hv = add_hull_vars(p, "");
  auto w = wetted_area_constraints(p, hv, 6, 0.9, "");
  ASSERT_EQ(w.constraints.size(), 5u);
  gp::Assignment x{{hv.L.id, 150}, {hv.B.id, 30}, {hv.T.id, 7}, {hv.D.id, 15}};
  // r_0 = 1 for beta > 1; set every r to its bound.
  for (int k = 0; k < 4; ++k) {
    double g = midship_arc_integrand(k * 30 / 6.0, 30, 7, 6);
    x[w.rg[static_cast<size_t>(k)].id] = g * g;
  }
  EXPECT_DOUBLE_EQ(x[w.rg[0].id], 1.0);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(gp::evaluate(w.constraints[static_cast<size_t>(k)].expr, x), 1, 1e-12);
  EXPECT_NEAR(gp::evaluate(midship_arc_expr(w, hv), x), midship_arc_simpson(30, 7, 6), 1e-12);
  x[w.area.id] = 2 * 150 * 0.9 * midship_arc_simpson(30, 7, 6);
  EXPECT_NEAR(gp::evaluate(w.constraints[4].expr, x), 1, 1e-12);
}

TEST(Stability, FitAndConstraint) {
  auto f = fit_stability(6);
  EXPECT_GT(f.delta1, 0);
  EXPECT_GT(f.delta2, 1);
  EXPECT_LT(f.delta2, 2);
  // Independent 2x2 normal equations on the same grid.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    double r = 2.5 + 3.5 * i / (n - 1);
    double lx = std::log(r), ly = std::log(stability_posynomial(r, 6));
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_NEAR(f.delta2, slope, 1e-10);
  EXPECT_NEAR(f.rmse_log, 0.0225, 5e-4);

  gp::Problem p;
  auto hv = add_hull_vars(p, "");
  gp::Expr kg = gp::Monomial(0.6) * gp::Monomial(hv.D);
  auto c = stability_constraint(hv, 6, kg, 0.15, f);
  gp::Assignment x{{hv.L.id, 150}, {hv.B.id, 30}, {hv.T.id, 7}, {hv.D.id, 15}};
  double lhs = (0.15 + 9) / (kb_fraction(6) * 7);
  double rhs = f.delta1 * std::pow(30.0 / 7, f.delta2);
  EXPECT_NEAR(gp::evaluate(c.expr, x), lhs / rhs, 1e-12);
}

TEST(Arrangement, ConstraintCensus) {
  for (int n : {1, 3, 5}) {
    gp::Problem p;
    auto hv = add_hull_vars(p, "");
    auto a = add_arrangement_vars(p, n, "");
    auto Q = p.add_var("Q");
    auto cs = arrangement_constraints(a, hv, gp::Monomial(Q) / gp::Monomial(double(n)), {});
    const size_t half = static_cast<size_t>((n + 1) / 2);
    // 3 bounds + 3 per room + overlap chain + LCB + 3 deck spacings
    EXPECT_EQ(cs.size(), 3 + 3 * half + (half - 1) + 1 + 3) << n;
  }
  gp::Problem p;
  auto hv = add_hull_vars(p, "");
  EXPECT_THROW(add_arrangement_vars(p, 2, ""), std::invalid_argument);
}

TEST(Arrangement, LcbConstraintUsesOracle) {
  gp::Problem p;
  auto hv = add_hull_vars(p, "");
  auto a = add_arrangement_vars(p, 3, "");
  auto Q = p.add_var("Q");
  auto cs = arrangement_constraints(a, hv, gp::Monomial(Q), {});
  // LCB constraint sits just before the three deck spacings.
  const auto& lcb = cs[cs.size() - 4];
  gp::Assignment x{{hv.L.id, 100}, {a.lt[1].id, 40}, {a.l[1].id, 2 * (oracles::lcb_fraction_quad(6) * 100 - 40)}};
  EXPECT_NEAR(gp::evaluate(lcb.expr, x), 1, 1e-9);
}

TEST(Convexity, HullConstraints) {
  std::mt19937_64 rng(7);
  gp::Problem p;
  auto hv = add_hull_vars(p, "");
  auto w = wetted_area_constraints(p, hv, 6, 0.9, "");
  auto a = add_arrangement_vars(p, 3, "");
  auto Q = p.add_var("Q");
  auto cs = arrangement_constraints(a, hv, gp::Monomial(Q), {});
  cs.insert(cs.end(), w.constraints.begin(), w.constraints.end());
  cs.push_back(stability_constraint(hv, 6, gp::Monomial(0.6) * gp::Monomial(hv.D), 0.15, fit_stability(6)));
  for (auto& c : cs) {
    auto r = oracles::sample_convexity(c, rng, 1000);
    EXPECT_LE(r.worst, 1e-12);
    EXPECT_EQ(r.skipped, 0);
  }
}
