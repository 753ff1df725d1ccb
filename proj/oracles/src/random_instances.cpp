#include "zevrpp/oracles/random_instances.hpp"

#include <cmath>

#include "zevrpp/gp/logspace.hpp"

namespace zevrpp::oracles {

using namespace gp;

namespace {

double unif(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

Monomial random_monomial(std::mt19937_64& rng, const std::vector<Variable>& vars) {
  std::vector<std::pair<VarId, double>> e;
  for (auto& v : vars)
    if (unif(rng, 0, 1) < 0.6) e.emplace_back(v.id, std::round(unif(rng, -3, 3) * 4) / 4);
  return Monomial(std::exp(unif(rng, -2, 2)), e);
}

}  // namespace

Posynomial random_posynomial(std::mt19937_64& rng, const std::vector<Variable>& vars, int terms) {
  std::vector<Monomial> t;
  for (int k = 0; k < terms; ++k) t.push_back(random_monomial(rng, vars));
  return Posynomial(t);
}

Expr random_expr(std::mt19937_64& rng, const std::vector<Variable>& vars, int depth) {
  int kind = depth <= 0 ? 0 : static_cast<int>(unif(rng, 0, 5));
  switch (kind) {
    case 1:
      return random_expr(rng, vars, depth - 1) + random_expr(rng, vars, depth - 1);
    case 2:
      return random_expr(rng, vars, depth - 1) * random_expr(rng, vars, depth - 1);
    case 3:
      return pow(random_expr(rng, vars, depth - 1), unif(rng, 0.3, 2.5));
    case 4: {
      // keep the exponent argument small so exp stays well scaled
      Monomial m = random_monomial(rng, vars);
      return Expr(random_monomial(rng, vars)) * exp_of(Expr(m * Monomial(0.3 / m.coeff())));
    }
    default:
      return Expr(random_posynomial(rng, vars, 1 + static_cast<int>(unif(rng, 0, 4))));
  }
}

ConstructedGp constructed_gp(std::mt19937_64& rng, int nvars, int nactive, int ninactive) {
  ConstructedGp out;
  Problem& p = out.problem;
  std::vector<Variable> x;
  for (int i = 0; i < nvars; ++i) x.push_back(p.add_var("x" + std::to_string(i)));
  Assignment ustar;
  for (auto& v : x) ustar[v.id] = unif(rng, -1.5, 1.5);

  std::vector<double> agg(nvars, 0.0);
  // Active constraints all decrease along d, so the feasible set has interior.
  std::vector<double> d(nvars);
  for (auto& di : d) di = unif(rng, -1, 1);
  auto plant = [&](bool active) {
    Posynomial f = random_posynomial(rng, x, 1 + static_cast<int>(unif(rng, 0, 4)));
    for (;;) {
      double slope = 0.0;
      for (auto& [id, gi] : gradient(Expr(f), ustar)) slope += gi * d[id];
      if (!active || slope < -0.1) break;
      f = random_posynomial(rng, x, 1 + static_cast<int>(unif(rng, 0, 4)));
    }
    double lv = log_eval(Expr(f), ustar);
    double shift = active ? lv : lv + unif(rng, 0.2, 1.5);
    Posynomial g = f * Monomial(std::exp(-shift));
    p.add(le(Expr(g), Monomial(1.0)));
    if (active) {
      double lam = unif(rng, 0.2, 2.0);
      for (auto& [id, d] : gradient(Expr(g), ustar)) agg[id] += lam * d;
    }
  };
  for (int i = 0; i < nactive; ++i) plant(true);
  for (int i = 0; i < ninactive; ++i) plant(false);

  // objective monomial with log-gradient -sum lam grad F_i
  std::vector<std::pair<VarId, double>> e;
  double lu = 0.0;
  for (int i = 0; i < nvars; ++i) {
    e.emplace_back(x[i].id, -agg[i]);
    lu += -agg[i] * ustar[x[i].id];
  }
  double c = std::exp(unif(rng, -1, 1));
  p.minimize(Expr(Monomial(c, e)));
  out.optimum = c * std::exp(lu);
  return out;
}

FleetInstance random_fleet_migp(std::mt19937_64& rng, int services, int int_vars, int range) {
  FleetInstance out;
  Problem& p = out.problem;
  std::vector<Expr> cost;
  std::vector<Monomial> util;
  int ints_left = int_vars;
  for (int s = 0; s < services; ++s) {
    auto tag = std::to_string(s);
    Variable nrt = p.add_var("N_rt" + tag, VarKind::Integer, 1, range);
    --ints_left;
    Monomial fleet(1.0);
    if (ints_left > services - s - 1) {
      Variable nv = p.add_var("N_v" + tag, VarKind::Integer, 1, range);
      --ints_left;
      fleet = Monomial(nv);
    }
    Variable v = p.add_var("v" + tag, VarKind::Positive, 0.1, unif(rng, 1.5, 3.0));
    Variable cap = p.add_var("cap" + tag);
    Variable f = p.add_var("f" + tag);
    double d = unif(rng, 1.0, 4.0), t0 = unif(rng, 0.1, 0.5), T = unif(rng, 4.0, 10.0);
    // round trips fit in the horizon of the available fleet
    p.add(le(Expr(Posynomial({Monomial(d) * Monomial(nrt) * Monomial(v).pow(-1),
                              Monomial(t0) * Monomial(nrt)})),
             Monomial(T) * fleet));
    p.add(le(Expr(f), Monomial(nrt) * Monomial(cap)));
    p.add(le(Expr(f), Monomial(unif(rng, 5.0, 20.0))));
    cost.push_back(Expr(fleet * Monomial(unif(rng, 1.0, 3.0)) * Monomial(cap).pow(0.7)) +
                   Expr(Monomial(unif(rng, 0.05, 0.3)) * Monomial(nrt) * Monomial(cap).pow(0.5) *
                        Monomial(v).pow(2.0) * Monomial(d)));
    util.push_back(Monomial(f).pow(unif(rng, 0.5, 1.5)));
  }
  Monomial u(1.0);
  for (auto& m : util) u = u * m;
  p.add(mono_ge(u, std::exp(unif(rng, 1.0, 3.0))));
  p.minimize(sum(cost));
  for (auto id : p.integer_vars()) {
    out.lb.push_back(p.var(id).lb);
    out.ub.push_back(p.var(id).ub);
  }
  return out;
}

}  // namespace zevrpp::oracles
