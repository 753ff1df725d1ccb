#include <gtest/gtest.h>

#include <cmath>

#include "zevrpp/gp/logspace.hpp"
#include "zevrpp/gp/problem.hpp"
#include "zevrpp/oracles/convexity.hpp"
#include "zevrpp/oracles/random_instances.hpp"

using namespace zevrpp::gp;
using zevrpp::oracles::sample_convexity;

namespace {

std::vector<Variable> make_vars(Problem& p, int n) {
  std::vector<Variable> v;
  for (int i = 0; i < n; ++i) v.push_back(p.add_var("x" + std::to_string(i)));
  return v;
}

}  // namespace

TEST(MonoAlgebra, ExponentsCancel) {
  Problem p;
  auto x = p.add_var("x");
  Monomial m = Monomial(2.0) * Monomial(x) * (Monomial(3.0) * Monomial(x).pow(-1));
  EXPECT_TRUE(m.is_constant());
  EXPECT_DOUBLE_EQ(m.coeff(), 6.0);
}

TEST(MonoAlgebra, Power) {
  Problem p;
  auto x = p.add_var("x"), y = p.add_var("y");
  Monomial m = (Monomial(x) * Monomial(y).pow(2)).pow(0.5);
  EXPECT_DOUBLE_EQ(m.exponent(x.id), 0.5);
  EXPECT_DOUBLE_EQ(m.exponent(y.id), 1.0);
}

TEST(MonoAlgebra, MetacentreRadius) {
  Problem p;
  auto L = p.add_var("L"), B = p.add_var("B"), T = p.add_var("T");
  const double cb = 0.623555;
  Monomial iwp = Monomial(7.0 / 120) * Monomial(L) * Monomial(B).pow(3);
  Monomial vol = Monomial(cb) * Monomial(L) * Monomial(B) * Monomial(T);
  Monomial bm = iwp / vol;
  EXPECT_NEAR(bm.coeff(), 7.0 / (120 * cb), 1e-15);
  EXPECT_EQ(bm.exponent(L.id), 0.0);
  EXPECT_EQ(bm.exponent(B.id), 2.0);
  EXPECT_EQ(bm.exponent(T.id), -1.0);
  EXPECT_NEAR(evaluate(bm, {{L.id, 1}, {B.id, 30}, {T.id, 7}}), 12.02781, 1e-5);
}

TEST(Evaluate, Basics) {
  Problem p;
  auto x = p.add_var("x"), r = p.add_var("r");
  EXPECT_NEAR(evaluate(Expr(Monomial(x).pow(-1)), {{x.id, 3.107}}), 0.32185, 1e-5);
  Expr q = Expr(Monomial(0.5) * Monomial(x).pow(-1)) + Expr(Monomial(0.05) * Monomial(x).pow(2));
  EXPECT_DOUBLE_EQ(evaluate(q, {{x.id, 1.0}}), 0.55);
  EXPECT_DOUBLE_EQ(evaluate(max(Expr(1.0), Expr(r)), {{r.id, 0.5}}), 1.0);
  EXPECT_THROW(evaluate(Expr(x), {}), std::out_of_range);
  EXPECT_THROW(evaluate(Expr(x), {{x.id, -1.0}}), std::domain_error);
}

TEST(LogTransform, Values) {
  Problem p;
  auto x = p.add_var("x"), y = p.add_var("y");
  Monomial m(2.0, {{x.id, 1.0}, {y.id, -1.0}});
  EXPECT_NEAR(log_eval(Expr(m), {{x.id, 0}, {y.id, 0}}), std::log(2.0), 1e-15);
  Expr two = Expr(x) + Expr(x);
  EXPECT_NEAR(log_eval(two, {{x.id, 0}}), std::log(2.0), 1e-15);
  EXPECT_NEAR(log_eval(Expr(Monomial(x).pow(-1)), {{x.id, std::log(std::cbrt(30.0))}}),
              -std::log(std::cbrt(30.0)), 1e-14);
}

TEST(Gradient, AffineAndSoftmax) {
  Problem p;
  auto x = p.add_var("x"), y = p.add_var("y");
  auto g = gradient(Expr(Monomial(3.0, {{x.id, 1.5}, {y.id, -2.0}})), {{x.id, 0.3}, {y.id, -0.7}});
  EXPECT_DOUBLE_EQ(g[x.id], 1.5);
  EXPECT_DOUBLE_EQ(g[y.id], -2.0);
  auto g2 = gradient(Expr(x) + Expr(y), {{x.id, 0.0}, {y.id, 0.0}});
  EXPECT_DOUBLE_EQ(g2[x.id], 0.5);
  EXPECT_DOUBLE_EQ(g2[y.id], 0.5);
  EXPECT_THROW(gradient(max(Expr(x), Expr(y)), {{x.id, 0.0}, {y.id, 0.0}}), std::logic_error);
}

TEST(Gradient, RandomPosynomialsMatchCentralDifferences) {
  std::mt19937_64 rng(3);
  Problem p;
  auto vars = make_vars(p, 8);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 100; ++k) {
    Posynomial f = zevrpp::oracles::random_posynomial(rng, vars, 1 + k % 10);
    Assignment u;
    for (auto& v : vars) u[v.id] = U(rng);
    auto g = gradient(Expr(f), u);
    for (auto& v : vars) {
      const double h = 1e-6;
      Assignment a = u, b = u;
      a[v.id] += h;
      b[v.id] -= h;
      double fd = (log_eval(Expr(f), a) - log_eval(Expr(f), b)) / (2 * h);
      double an = g.count(v.id) ? g[v.id] : 0.0;
      EXPECT_LE(std::abs(fd - an), 1e-6 * std::max(1.0, std::abs(an))) << k;
    }
  }
}

TEST(Hessian, MatchesGradientDifferences) {
  std::mt19937_64 rng(9);
  Problem p;
  auto vars = make_vars(p, 4);
  for (int k = 0; k < 30; ++k) {
    Expr e = zevrpp::oracles::random_expr(rng, vars, 3);
    LogFunction f(e);
    if (f.vars().empty()) continue;
    Assignment u;
    for (auto id : f.vars()) u[id] = 0.1 * id - 0.2;
    auto H = f.hessian(u);
    for (size_t i = 0; i < f.vars().size(); ++i) {
      const double h = 1e-5;
      Assignment a = u, b = u;
      a[f.vars()[i]] += h;
      b[f.vars()[i]] -= h;
      auto ga = f.gradient(a), gb = f.gradient(b);
      for (size_t j = 0; j < f.vars().size(); ++j) {
        double fd = (ga[f.vars()[j]] - gb[f.vars()[j]]) / (2 * h);
        EXPECT_NEAR(H(static_cast<long>(j), static_cast<long>(i)), fd, 1e-5 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST(Convexity, RandomExpressions) {
  std::mt19937_64 rng(21);
  Problem p;
  auto vars = make_vars(p, 5);
  for (int k = 0; k < 50; ++k) {
    Expr e = zevrpp::oracles::random_expr(rng, vars, 3);
    auto r = sample_convexity(e, rng, 1000, {}, 1.0);
    EXPECT_LE(r.worst, 1e-12) << to_string(e);
  }
}

TEST(Convexity, MonomialIsExactlyAffine) {
  std::mt19937_64 rng(1);
  Problem p;
  auto vars = make_vars(p, 4);
  Expr m = Expr(Monomial(2.5, {{0, 1.3}, {1, -0.7}, {3, 2.0}}));
  std::uniform_real_distribution<double> U(-2, 2);
  for (int k = 0; k < 100; ++k) {
    Assignment u, d, a, b;
    for (auto& v : vars) {
      u[v.id] = U(rng);
      d[v.id] = U(rng);
      a[v.id] = u[v.id] + d[v.id];
      b[v.id] = u[v.id] - d[v.id];
    }
    EXPECT_NEAR(log_eval(m, a) - 2 * log_eval(m, u) + log_eval(m, b), 0.0, 1e-12);
  }
}

TEST(RoundTrip, EvaluateEqualsExpOfLogEval) {
  std::mt19937_64 rng(4);
  Problem p;
  auto vars = make_vars(p, 4);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 100; ++k) {
    Expr e = zevrpp::oracles::random_expr(rng, vars, 3);
    Assignment u, x;
    for (auto& v : vars) {
      u[v.id] = U(rng);
      x[v.id] = std::exp(u[v.id]);
    }
    double a = evaluate(e, x), b = std::exp(log_eval(e, u));
    EXPECT_NEAR(a / b, 1.0, 1e-12);
  }
}

TEST(Lowering, MaxDistributes) {
  Problem p;
  auto x = p.add_var("x"), y = p.add_var("y"), z = p.add_var("z");
  Expr e = (max(Expr(x), Expr(y)) + Expr(z)) * Monomial(2.0);
  auto br = max_branches(e);
  ASSERT_EQ(br.size(), 2u);
  Assignment a{{x.id, 3.0}, {y.id, 1.0}, {z.id, 0.5}};
  double mx = 0;
  for (auto& b : br) mx = std::max(mx, evaluate(b, a));
  EXPECT_DOUBLE_EQ(mx, evaluate(e, a));
  Expr q = pow(exp_of(Expr(max(Expr(x), Expr(z)))), 2.0);
  EXPECT_EQ(max_branches(q).size(), 2u);
}
