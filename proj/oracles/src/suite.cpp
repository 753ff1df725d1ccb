#include "zevrpp/oracles/suite.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "zevrpp/fit/softmax_affine.hpp"
#include "zevrpp/gp/logspace.hpp"
#include "zevrpp/gp/solver.hpp"
#include "zevrpp/hull/constraints.hpp"
#include "zevrpp/hull/hydrostatics.hpp"
#include "zevrpp/model/model.hpp"
#include "zevrpp/oracles/convexity.hpp"
#include "zevrpp/oracles/enumeration.hpp"
#include "zevrpp/oracles/girder_tables.hpp"
#include "zevrpp/oracles/hydrostatics.hpp"
#include "zevrpp/oracles/random_instances.hpp"
#include "zevrpp/propulsion/battery.hpp"
#include "zevrpp/propulsion/coefficients.hpp"
#include "zevrpp/propulsion/resistance.hpp"
#include "zevrpp/structures/girder.hpp"

namespace zevrpp::oracles {

bool CriterionResult::pass() const {
  if (checks.empty()) return false;
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

using Clock = std::chrono::steady_clock;

double secs(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

OracleCheck at_most(std::string name, double value, double limit) {
  return {std::move(name), value, limit, value <= limit};
}

double rel(double a, double b) { return std::abs(a / b - 1); }

double to_double(Rational r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

double dense_rmse(const std::function<double(double)>& model, const std::function<double(double)>& truth, double lo,
                  double hi, int n = 5000) {
  double s = 0;
  for (int i = 0; i < n; ++i) {
    double x = lo + (hi - lo) * i / (n - 1);
    double d = std::log(model(x)) - std::log(truth(x));
    s += d * d;
  }
  return std::sqrt(s / n);
}

struct Context {
  SuiteOptions opt;
  std::string path(const std::string& rel) const { return opt.data_dir + "/" + rel; }

  std::map<std::string, model::ModelFits> fits;
  const model::ModelFits& fits_for(const model::Scenario& sc) {
    auto key = fmt::format("{}|{}", sc.prm.beta, sc.fits_path);
    auto it = fits.find(key);
    if (it == fits.end()) it = fits.emplace(key, model::build_fits(sc)).first;
    return it->second;
  }

  struct Solved {
    gp::Status status = gp::Status::IterationLimit;
    double objective = 0;
    double worst = 0;
    std::string worst_label, error;
    double seconds = 0;
  };
  Solved solve(const model::Scenario& sc) {
    auto t0 = Clock::now();
    Solved s;
    auto a = model::assemble(sc, fits_for(sc));
    auto sol = gp::solve_migp(a.problem);
    s.status = sol.status;
    if (sol.status == gp::Status::Optimal) {
      try {
        auto fs = model::extract_and_validate(a, sol);
        s.objective = fs.objective;
        s.worst = fs.worst_violation;
        s.worst_label = fs.worst_constraint;
      } catch (const std::exception& e) {
        s.error = e.what();
        s.worst = INFINITY;
      }
    }
    s.seconds = secs(t0);
    return s;
  }
  std::optional<Solved> m4;
};

CriterionResult toy_gp() {
  CriterionResult r{"1", "two-variable GP optimum (3.107, 0.644)", {}, {}, 0};
  gp::Problem p;
  auto x1 = p.add_var("x1"), x2 = p.add_var("x2");
  gp::Monomial m1(x1), m2(x2);
  p.minimize(gp::Expr(m1.pow(-1)));
  p.add(gp::ge(m2, gp::Expr(gp::Posynomial({gp::Monomial(0.5) * m1.pow(-1), gp::Monomial(1.0 / 20) * m1.pow(2)}))));
  p.add(gp::le(gp::Expr(m2), gp::Monomial(2.0) * m1.pow(-1)));
  p.add(gp::le(gp::Expr(m2), gp::Monomial(3.0)));
  auto t0 = Clock::now();
  auto s = gp::solve_convex_relaxation(p);
  double dt = secs(t0);
  r.checks.push_back({"status optimal", 0, 0, s.status == gp::Status::Optimal});
  r.checks.push_back(at_most("|x1 - 3.107|", std::abs(s[x1] - 3.107), 0.005));
  r.checks.push_back(at_most("|x2 - 0.644|", std::abs(s[x2] - 0.644), 0.005));
  r.checks.push_back(at_most("|x1 - 30^(1/3)|", std::abs(s[x1] - std::cbrt(30.0)), 1e-4));
  r.checks.push_back(at_most("|x2 - 2/30^(1/3)|", std::abs(s[x2] - 2 / std::cbrt(30.0)), 1e-4));
  r.checks.push_back(at_most("runtime s", dt, 0.1));
  return r;
}

CriterionResult hydrostatics() {
  CriterionResult r{"2", "hydrostatics against adaptive quadrature", {}, {}, 0};
  for (double b : {2.0, 4.0, 6.0, 8.0, 12.0}) {
    hull::HullParams h{150, 30, 7, 15, b};
    auto tag = [&](const char* what) { return fmt::format("{} beta={}", what, b); };
    r.checks.push_back(at_most(tag("C_B"), rel(hull::block_coefficient(b), block_coefficient_quad(b)), 1e-6));
    r.checks.push_back(
        at_most(tag("volume"), rel(h.L * h.B * h.T * hull::block_coefficient(b), volume_quad(h)), 1e-6));
    r.checks.push_back(
        at_most(tag("bulkhead area"), rel(hull::bulkhead_area(40, 9, h), bulkhead_area_quad(40, 9, h)), 1e-6));
    r.checks.push_back(
        at_most(tag("I_wp = 7LB^3/120"), rel(hull::waterplane_inertia(h.L, h.B), waterplane_inertia_quad(h)), 1e-8));
    r.checks.push_back(at_most(tag("KB"), rel(hull::kb_fraction(b), kb_fraction_quad(b)), 1e-6));
    r.checks.push_back(at_most(tag("LCB"), rel(hull::lcb_fraction(b), lcb_fraction_quad(b)), 1e-6));
    // reported only: the printed LCB expression is twice the centroid fraction
    r.checks.push_back({tag("printed LCB / oracle"), hull::lcb_fraction_printed(b) / lcb_fraction_quad(b), 0, true});
  }
  return r;
}

CriterionResult structural() {
  CriterionResult r{"3", "midship coefficients 2/5, 133/150, 53/200", {}, {}, 0};
  for (auto [B, D, p] : {std::tuple{Rational(1), Rational(1), Rational(1)},
                         std::tuple{Rational(30), Rational(15), Rational(12, 1000)},
                         std::tuple{Rational(7, 2), Rational(5, 3), Rational(1, 50)}}) {
    auto g = girder_from_tables(B, D, p);
    Rational unit = B * D * p / g.inertia;
    auto tag = [&](const char* what) { return fmt::format("{} B={:.4g} D={:.4g}", what, to_double(B), to_double(D)); };
    r.checks.push_back({tag("z_NA / D == 2/5"), to_double(g.z_na / D), 0.4, g.z_na / D == Rational(2, 5)});
    r.checks.push_back({tag("I / (p B D^2) == 133/150"), to_double(g.inertia / (p * B * D * D)), 133.0 / 150,
                        g.inertia / (p * B * D * D) == Rational(133, 150)});
    r.checks.push_back({tag("|q_E| / (B D p / I) == 53/200"), to_double(-g.q_e / unit), 53.0 / 200,
                        -g.q_e / unit == Rational(53, 200)});
    auto sv = structures::section_values(to_double(B), to_double(D), to_double(p));
    r.checks.push_back(at_most(tag("library z_NA"), rel(sv.z_na, to_double(g.z_na)), 1e-14));
    r.checks.push_back(at_most(tag("library I"), rel(sv.inertia, to_double(g.inertia)), 1e-14));
  }
  return r;
}

std::vector<CriterionResult> fits(Context& ctx) {
  std::vector<CriterionResult> out;
  CriterionResult a{"4a", "stability monomial fit RMSE < 1% on B/T in [2.5, 6]", {}, {}, 0};
  for (double b : {2.0, 6.0, 12.0}) {
    auto f = hull::fit_stability(b);
    double dense = dense_rmse([&](double x) { return f.delta1 * std::pow(x, f.delta2); },
                              [&](double x) { return hull::stability_posynomial(x, b); }, 2.5, 6.0);
    a.checks.push_back(at_most(fmt::format("log RMSE beta={}", b), dense, 0.01));
  }
  a.known =
      "the stability posynomial is not a monomial to 1% on this range; the best least-squares monomial "
      "leaves about 2.2% log RMSE for every beta";
  out.push_back(a);

  auto coeff = propulsion::load_resistance(ctx.path("coefficients/resistance.ini"));
  auto rf = propulsion::build_resistance_fits(coeff, 6);
  double cb = hull::block_coefficient(6);

  CriterionResult b{"4b", "rho^rho posynomial-power fit RMSE < 0.01%", {}, {}, 0};
  auto rr = [](double x) { return std::pow(x, x); };
  b.checks.push_back(at_most(
      fmt::format("model surrogate, rho in [{:.3f}, {:.3f}]", rf.rho_lo, rf.rho_hi),
      dense_rmse([&](double x) { return rf.crcrit.eval({x}); }, rr, rf.rho_lo, rf.rho_hi), 1e-4));
  auto pp = fit::fit_posynomial_power(fit::FitData::sample_1d(rr, 1.0, 1.6, 500), 2);
  b.checks.push_back(
      at_most("two-term fit, rho in [1, 1.6]", dense_rmse([&](double x) { return pp.eval({x}); }, rr, 1.0, 1.6), 1e-4));
  out.push_back(b);

  CriterionResult c{"4c", "C_R^std softmax-affine fit RMSE < 0.1% against the coefficient table", {}, {}, 0};
  c.checks.push_back(at_most(
      fmt::format("K={}, Fr in [{}, {}]", rf.cr_std.K, coeff.fr_lo, coeff.fr_hi),
      dense_rmse([&](double fr) { return rf.cr_std.eval({fr}); },
                 [&](double fr) { return propulsion::cr_std(fr, cb, coeff); }, coeff.fr_lo, coeff.fr_hi),
      1e-3));
  out.push_back(c);
  return out;
}

CriterionResult migp(const SuiteOptions& opt) {
  CriterionResult r{"5", "branch and bound equals exhaustive enumeration", {}, {}, 0};
  std::mt19937_64 rng(2024);
  gp::Tolerances tol;
  tol.gap_rel = 1e-10;
  for (int k = 0; k < opt.migp_instances; ++k) {
    int services = 1 + k % 2, ints = 2 + k % 2, range = 6 + k % 7;
    auto inst = random_fleet_migp(rng, services, ints, range);
    auto s = gp::solve_migp(inst.problem, tol);
    auto e = enumerate_migp(inst.problem, inst.lb, inst.ub, tol);
    auto name = fmt::format("instance {} ({} services, {} integers, range {})", k, services, ints, range);
    if (!e.feasible || s.status != gp::Status::Optimal) {
      r.checks.push_back({name + " statuses agree", 0, 0, !e.feasible && s.status == gp::Status::Infeasible});
      continue;
    }
    r.checks.push_back(at_most(name, rel(s.objective, e.objective), 1e-8));
  }
  return r;
}

CriterionResult end_to_end(Context& ctx) {
  CriterionResult r{"6", "5-port, 4-route scenario solves and validates in < 60 s", {}, {}, 0};
  auto sc = model::load_scenario(ctx.path("scenarios/baltic.ini"), "M4");
  ctx.fits_for(sc);  // fitting is part of setup, not the solve
  ctx.m4 = ctx.solve(sc);
  r.checks.push_back({"status optimal", 0, 0, ctx.m4->status == gp::Status::Optimal});
  r.checks.push_back(
      at_most(fmt::format("worst relative violation ({})", ctx.m4->error.empty() ? ctx.m4->worst_label : ctx.m4->error),
              ctx.m4->worst, 1e-6));
  r.checks.push_back(at_most("wall time s", ctx.m4->seconds, 60));
  return r;
}

CriterionResult properties(Context& ctx) {
  CriterionResult r{"7", "substituted properties: fleet modes, monotonicity, degradation", {}, {}, 0};
  auto cost = [&](const model::Scenario& sc) {
    auto s = ctx.solve(sc);
    return s.status == gp::Status::Optimal && s.error.empty() ? s.objective : NAN;
  };
  auto corridor = ctx.path("scenarios/corridor.ini");
  double mixed = cost(model::load_scenario(corridor, "mixed"));
  double uniform = cost(model::load_scenario(corridor, "uniform"));
  r.checks.push_back({"corridor uniform / mixed >= 1", uniform / mixed, 1, uniform >= mixed * (1 - 1e-6)});
  if (ctx.opt.baltic && ctx.m4) {
    double u4 = cost(model::load_scenario(ctx.path("scenarios/baltic.ini"), "U4"));
    r.checks.push_back({"baltic U4 / M4 >= 1", u4 / ctx.m4->objective, 1, u4 >= ctx.m4->objective * (1 - 1e-6)});
  }

  auto toy = model::load_scenario(ctx.path("scenarios/toy.ini"), "mixed");
  double base_u = model::assemble(toy, ctx.fits_for(toy)).u_min;
  auto monotone = [&](const std::string& name, const std::vector<double>& grid,
                      const std::function<void(model::Scenario&, double)>& set) {
    double prev = 0;
    bool ok = true;
    std::string seq;
    for (double v : grid) {
      auto sc = toy;
      set(sc, v);
      double c = cost(sc);
      ok = ok && std::isfinite(c) && c >= prev * (1 - 1e-6);
      seq += fmt::format("{}{:.4g}", seq.empty() ? "" : " <= ", c);
      prev = c;
    }
    r.checks.push_back({fmt::format("cost nondecreasing in {}: {}", name, seq), 0, 0, ok});
  };
  monotone("U_min", {base_u - 0.1, base_u, base_u + 0.05}, [](model::Scenario& s, double v) { s.u_min = v; });
  monotone("demand scale", {0.8, 1.0, 1.25}, [](model::Scenario& s, double v) { s.prm.demand_scale = v; });

  auto d = propulsion::load_degradation(ctx.path("coefficients/degradation.ini"));
  auto three = propulsion::daily_cycles(3, 1.0, 0.8, d), six = propulsion::daily_cycles(6, 1.0, 0.8, d);
  bool faster = true;
  for (double days : {1.0, 10.0, 100.0, 1000.0})
    faster = faster && propulsion::capacity_loss(six, d, 24 * days) > propulsion::capacity_loss(three, d, 24 * days);
  r.checks.push_back({"6 cycles/day fades faster than 3 (1 to 1000 days)",
                      propulsion::capacity_loss(six, d, 24000) / propulsion::capacity_loss(three, d, 24000), 1,
                      faster});
  return r;
}

CriterionResult convexity(Context& ctx) {
  CriterionResult r{"8", "log-convexity of every emitted constraint and gradient accuracy", {}, {}, 0};
  std::mt19937_64 rng(8);
  auto sample = [&](const model::Scenario& sc, const std::string& tag) {
    auto a = model::assemble(sc, ctx.fits_for(sc));
    double worst = 0;
    size_t n = 0, failed = 0;
    for (auto& c : a.problem.constraints()) {
      auto rep = sample_convexity(c, rng, 1000);
      worst = std::max(worst, rep.worst);
      failed += rep.worst > 1e-9;
      ++n;
    }
    auto obj = sample_convexity(a.problem.objective(), rng, 1000);
    worst = std::max(worst, obj.worst);
    r.checks.push_back(at_most(fmt::format("{}: {} constraints and the objective, {} failing", tag, n, failed), worst,
                               1e-9));
  };
  sample(model::load_scenario(ctx.path("scenarios/toy.ini"), "mixed"), "toy");
  sample(model::load_scenario(ctx.path("scenarios/corridor.ini"), "uniform"), "corridor uniform");
  for (auto c : {"M4", "B4", "M1"}) sample(model::load_scenario(ctx.path("scenarios/baltic.ini"), c), c);

  gp::Problem p;
  std::vector<gp::Variable> vars;
  for (int i = 0; i < 5; ++i) vars.push_back(p.add_var(fmt::format("x{}", i)));
  std::uniform_real_distribution<double> U(-1, 1);
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    auto e = random_expr(rng, vars, 3);
    gp::Assignment u;
    for (auto& v : vars) u[v.id] = U(rng);
    auto g = gp::gradient(e, u);
    for (auto& v : vars) {
      const double h = 1e-6;
      auto a = u, b = u;
      a[v.id] += h;
      b[v.id] -= h;
      double fd = (gp::log_eval(e, a) - gp::log_eval(e, b)) / (2 * h);
      double an = g.count(v.id) ? g[v.id] : 0.0;
      worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
    }
  }
  r.checks.push_back(at_most("gradient vs central differences, 100 random expressions", worst, 1e-6));
  return r;
}

template <class F>
void timed(std::vector<CriterionResult>& out, F&& f) {
  auto t0 = Clock::now();
  auto r = f();
  if constexpr (std::is_same_v<decltype(r), CriterionResult>) {
    r.seconds = secs(t0);
    out.push_back(std::move(r));
  } else {
    for (auto& c : r) c.seconds = secs(t0) / static_cast<double>(r.size());
    out.insert(out.end(), r.begin(), r.end());
  }
}

}  // namespace

std::vector<CriterionResult> run_suite(const SuiteOptions& opt) {
  Context ctx{opt, {}, {}};
  std::vector<CriterionResult> out;
  timed(out, [] { return toy_gp(); });
  timed(out, [] { return hydrostatics(); });
  timed(out, [] { return structural(); });
  timed(out, [&] { return fits(ctx); });
  timed(out, [&] { return migp(opt); });
  if (opt.baltic) timed(out, [&] { return end_to_end(ctx); });
  timed(out, [&] { return properties(ctx); });
  timed(out, [&] { return convexity(ctx); });
  return out;
}

}  // namespace zevrpp::oracles
