#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "zevrpp/gp/solver.hpp"
#include "zevrpp/oracles/enumeration.hpp"
#include "zevrpp/oracles/random_instances.hpp"

using namespace zevrpp::gp;

namespace {

struct Toy {
  Problem p;
  Variable x1, x2;
  Toy() {
    x1 = p.add_var("x1");
    x2 = p.add_var("x2");
    Monomial m1(x1), m2(x2);
    p.minimize(Expr(m1.pow(-1)));
    p.add(ge(m2, Expr(Posynomial({Monomial(0.5) * m1.pow(-1), Monomial(1.0 / 20) * m1.pow(2)}))));
    p.add(le(Expr(m2), Monomial(2.0) * m1.pow(-1)));
    p.add(le(Expr(m2), Monomial(3.0)));
  }
};

}  // namespace

TEST(SolveConvex, ToyProblem) {
  Toy t;
  auto t0 = std::chrono::steady_clock::now();
  Solution s = solve_convex_relaxation(t.p);
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s[t.x1], std::cbrt(30.0), 1e-7);
  EXPECT_NEAR(s[t.x2], 2.0 / std::cbrt(30.0), 1e-7);
  EXPECT_LE(s.kkt_residual, 1e-8);
  EXPECT_LT(dt, 0.1);
  EXPECT_LE(kkt_residual(t.p, s.values), 1e-8);
  EXPECT_GT(kkt_residual(t.p, {2.0, 1.0}), 1e-3);
}

TEST(SolveConvex, SimpleBounds) {
  Problem p;
  auto x = p.add_var("x");
  p.minimize(Expr(x));
  p.add(mono_ge(Monomial(x), 5.0));
  auto s = solve_convex_relaxation(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s[x], 5.0, 1e-8);
  EXPECT_LE(kkt_residual(p, {5.0}), 1e-8);
}

TEST(SolveConvex, AmGm) {
  Problem p;
  auto a = p.add_var("a"), b = p.add_var("b");
  p.minimize(Expr(a) + Expr(b));
  p.add(mono_ge(Monomial(a) * Monomial(b), 1.0));
  auto s = solve_convex_relaxation(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.objective, 2.0, 1e-8);
  EXPECT_NEAR(s[a], 1.0, 1e-6);
}

TEST(SolveConvex, Infeasible) {
  Problem p;
  auto x = p.add_var("x");
  p.minimize(Expr(x));
  p.add(mono_ge(Monomial(x), 5.0));
  p.add(le(Expr(x), Monomial(4.0)));
  EXPECT_EQ(solve_convex_relaxation(p).status, Status::Infeasible);
}

TEST(SolveConvex, Unbounded) {
  Problem p;
  auto x = p.add_var("x");
  p.minimize(Expr(x));
  EXPECT_EQ(solve_convex_relaxation(p).status, Status::Unbounded);
}

TEST(SolveConvex, MonomialEqualityAndMaxObjective) {
  Problem p;
  auto x = p.add_var("x"), y = p.add_var("y");
  p.add(eq(Monomial(x) * Monomial(y), Monomial(4.0)));
  p.minimize(max(Expr(x), Expr(y)));
  auto s = solve_convex_relaxation(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s[x], 2.0, 1e-6);
  EXPECT_NEAR(s.objective, 2.0, 1e-7);
}

TEST(SolveConvex, LogBound) {
  // r + 2 <= log10(v) with v <= 1e9 and r as large as possible
  Problem p;
  auto r = p.add_var("r"), v = p.add_var("v");
  p.add(le(Expr(v), Monomial(1e9)));
  p.add(log_le(Posynomial({Monomial(std::log(10.0)) * Monomial(r), Monomial(2 * std::log(10.0))}),
               Monomial(v)));
  p.minimize(Expr(Monomial(r).pow(-1)));
  auto s = solve_convex_relaxation(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s[r], 7.0, 1e-6);
}

TEST(SolveConvex, PlantedOptima) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    auto inst = zevrpp::oracles::constructed_gp(rng, 2 + k % 7, 1 + k % 5, k % 4);
    auto s = solve_convex_relaxation(inst.problem);
    ASSERT_EQ(s.status, Status::Optimal) << "instance " << k;
    EXPECT_NEAR(s.objective / inst.optimum, 1.0, 1e-6) << "instance " << k;
  }
}

TEST(SolveMigp, Ceiling) {
  Problem p;
  auto n = p.add_var("n", VarKind::Integer);
  p.minimize(Expr(n));
  p.add(mono_ge(Monomial(n), 2.3));
  auto s = solve_migp(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_EQ(s[n], 3.0);
}

TEST(SolveMigp, TieGoesToSmallest) {
  Problem p;
  auto n = p.add_var("n", VarKind::Integer, 1, 10);
  auto x = p.add_var("x");
  p.minimize(Expr(Monomial(n) * Monomial(x)));
  p.add(mono_ge(Monomial(x) * Monomial(n), 10.0));
  auto s = solve_migp(p);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.objective, 10.0, 1e-7);
  EXPECT_EQ(s[n], 1.0);
}

TEST(SolveMigp, MatchesEnumeration) {
  std::mt19937_64 rng(5);
  Tolerances tol;
  tol.gap_rel = 1e-10;
  for (int k = 0; k < 10; ++k) {
    auto inst = zevrpp::oracles::random_fleet_migp(rng, 1 + k % 2, 2 + k % 2, 6 + k % 7);
    auto s = solve_migp(inst.problem, tol);
    auto e = zevrpp::oracles::enumerate_migp(inst.problem, inst.lb, inst.ub, tol);
    ASSERT_EQ(s.status == Status::Optimal, e.feasible) << k;
    if (!e.feasible) continue;
    EXPECT_NEAR(s.objective / e.objective, 1.0, 1e-8) << k;
    EXPECT_LE(s.relaxation_bound, s.objective * (1 + 1e-9));
    for (auto id : inst.problem.integer_vars()) EXPECT_EQ(s.values[id], std::round(s.values[id]));
  }
}
