#include <gtest/gtest.h>

#include <cmath>

#include "zevrpp/app/report.hpp"
#include "zevrpp/app/run.hpp"

using namespace zevrpp;
using namespace zevrpp::app;

namespace {

std::string data(const std::string& rel) { return std::string(ZEVRPP_DATA_DIR) + "/" + rel; }

FitsCache& cache() {
  static FitsCache c;
  return c;
}

model::Scenario toy(const std::string& c = "mixed") { return model::load_scenario(data("scenarios/toy.ini"), c); }

const model::FleetSolution& toy_solution() {
  static const model::FleetSolution s = *run_case(toy(), cache()).fleet;
  return s;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  size_t a = 0;
  for (size_t b; (b = text.find('\n', a)) != std::string::npos; a = b + 1) out.push_back(text.substr(a, b - a));
  return out;
}

}  // namespace

TEST(RunCase, ExitCodes) {
  auto r = run_case(toy(), cache());
  EXPECT_EQ(r.code, kOptimal);
  ASSERT_TRUE(r.fleet.has_value());
  EXPECT_LT(r.seconds, 2.0);
  auto inf = run_case(model::load_scenario(data("scenarios/infeasible.ini"), "high"), cache());
  EXPECT_EQ(inf.code, kInfeasible);
  EXPECT_FALSE(inf.fleet.has_value());
}

TEST(RunCase, Overrides) {
  EXPECT_EQ(parse_override("sigma_perm=200"), (std::pair<std::string, double>{"sigma_perm", 200}));
  EXPECT_THROW(parse_override("sigma_perm"), std::invalid_argument);
  EXPECT_THROW(parse_override("=3"), std::invalid_argument);
  EXPECT_THROW(parse_override("x=3y"), std::invalid_argument);
  auto sc = toy();
  apply_override(sc, "u_min", 1.5);
  EXPECT_EQ(sc.u_min, 1.5);
  apply_override(sc, "c_batt", 0);
  EXPECT_EQ(sc.prm.c_batt, 0);
  EXPECT_THROW(apply_override(sc, "nope", 1), std::out_of_range);
}

TEST(RunCase, ShippedFitFileMatchesFreshFits) {
  auto sc = toy();
  auto fresh = run_case(sc, cache());
  sc.fits_path = data("fits.ini");
  auto shipped = run_case(sc, cache());
  ASSERT_TRUE(shipped.fleet && fresh.fleet);
  EXPECT_NEAR(shipped.fleet->objective / fresh.fleet->objective, 1, 1e-4);
}

TEST(Report, JsonRoundTrip) {
  const auto& s = toy_solution();
  auto text = to_json(s);
  auto back = from_json(text);
  EXPECT_EQ(to_json(back), text);
  EXPECT_EQ(back.objective, s.objective);
  EXPECT_EQ(back.services[0].legs[1].speed_kn, s.services[0].legs[1].speed_kn);
  EXPECT_EQ(back.charger_mw, s.charger_mw);
  EXPECT_EQ(back.cost, s.cost);
  EXPECT_EQ(back.flows.size(), s.flows.size());
  EXPECT_EQ(solutions_to_json(solutions_from_json(solutions_to_json({s, s}))), solutions_to_json({s, s}));
  EXPECT_THROW(from_json("{"), std::invalid_argument);
  EXPECT_THROW(from_json("{\"scenario\": 3}"), std::invalid_argument);
}

TEST(Report, Deterministic) {
  auto a = run_case(toy(), cache()), b = run_case(toy(), cache());
  EXPECT_EQ(to_json(*a.fleet), to_json(*b.fleet));
  EXPECT_EQ(design_csv({*a.fleet}), design_csv({*b.fleet}));
}

TEST(Report, Tables) {
  EXPECT_EQ(speed_pair(21.6, 21.6), "21.6 (21.6)");
  EXPECT_EQ(speed_pair(13.04, 12.96), "13.0 (13.0)");
  auto s = toy_solution();
  auto b = s;
  b.case_label = "other";
  b.charger_mw.erase(2);

  auto ch = lines(chargers_csv({s, b}));
  ASSERT_EQ(ch.size(), 3u);
  EXPECT_EQ(ch[0], "case,West,East");
  EXPECT_EQ(ch[2].substr(ch[2].size() - 1), ",");  // no charger at East

  auto sp = lines(speeds_csv({s}));
  ASSERT_EQ(sp.size(), 2u);
  EXPECT_EQ(sp[1], "mixed,12,1-2,\"" + speed_pair(s.services[0].legs[0].speed_kn, s.services[0].legs[1].speed_kn) + "\"");

  auto d = lines(design_csv({s, b}));
  EXPECT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0], "case,service,n_rt,n_vessel,L_m,L_sup_m,V_GT,E_batt_MWh,t_cell_years");

  auto c = lines(costs_csv({s}));
  EXPECT_EQ(c.size(), 1 + model::kCostTerms.size() + 1);
  EXPECT_NE(table_text({s}).find("1-2: " + sp[1].substr(sp[1].find('"') + 1, 11)), std::string::npos);
}

TEST(Report, CheckRejectsTampering) {
  auto s = toy_solution();
  EXPECT_NO_THROW(check_report(s));
  auto t = s;
  t.cost[0].second *= 2;
  EXPECT_THROW(check_report(t), std::invalid_argument);
  t = s;
  t.services[0].n_rt = 0;
  EXPECT_THROW(check_report(t), std::invalid_argument);
  t = s;
  t.services[0].legs.pop_back();
  EXPECT_THROW(check_report(t), std::invalid_argument);
  t = s;
  t.charger_mw[1] = NAN;
  EXPECT_THROW(check_report(t), std::invalid_argument);
}

TEST(Sweep, ServiceLevelRaisesCost) {
  auto sc = toy();
  double u = model::assemble(sc, cache().get(sc)).u_min;
  auto pts = sweep(sc, "u_min", u - 0.2, u + 0.05, 4, 2, cache());
  ASSERT_EQ(pts.size(), 4u);
  double prev = 0;
  for (auto& p : pts) {
    ASSERT_TRUE(p.outcome.fleet) << p.value;
    EXPECT_GE(p.outcome.fleet->objective, prev * (1 - 1e-6));
    prev = p.outcome.fleet->objective;
  }
  EXPECT_DOUBLE_EQ(pts.front().value, u - 0.2);
  EXPECT_DOUBLE_EQ(pts.back().value, u + 0.05);
}

TEST(Sweep, DemandScaleIsMonotone) {
  auto pts = sweep(toy(), "demand_scale", 0.7, 1.3, 4, 3, cache());
  for (size_t k = 1; k < pts.size(); ++k)
    EXPECT_GE(pts[k].outcome.fleet->objective, pts[k - 1].outcome.fleet->objective * (1 - 1e-6));
}

TEST(Sweep, FreeBatteriesVanishFromTheBreakdown) {
  auto pts = sweep(toy(), "c_batt", 0, 3e5, 2, 1, cache());
  auto term = [](const model::FleetSolution& s, const std::string& name) {
    for (auto& [n, v] : s.cost)
      if (n == name) return v;
    return -1.0;
  };
  EXPECT_EQ(term(*pts[0].outcome.fleet, "battery"), 0.0);
  EXPECT_GT(term(*pts[1].outcome.fleet, "battery"), 0.0);
  EXPECT_LT(pts[0].outcome.fleet->objective, pts[1].outcome.fleet->objective);
}

TEST(Sweep, FailedPointsAreMarked) {
  auto pts = sweep(toy(), "theta_u", 0.9, 1.5, 3, 2, cache());
  EXPECT_EQ(pts[0].outcome.code, kOptimal);
  EXPECT_EQ(pts[2].outcome.code, kInputError);
  EXPECT_NE(pts[2].outcome.error.find("theta_u"), std::string::npos);
  auto rows = lines(sweep_csv("theta_u", pts));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NE(rows[3].find("InputError"), std::string::npos);
  auto cols = [](const std::string& r) {
    size_t n = 1;
    bool quoted = false;
    for (char ch : r) {
      if (ch == '"') quoted = !quoted;
      n += ch == ',' && !quoted;
    }
    return n;
  };
  for (auto& r : rows) EXPECT_EQ(cols(r), cols(rows[0])) << r;
  EXPECT_THROW(sweep(toy(), "nope", 0, 1, 2, 1, cache()), std::out_of_range);
  EXPECT_THROW(sweep(toy(), "u_min", 0, 1, 1, 1, cache()), std::invalid_argument);
}

TEST(Sweep, ThreadCountFromEnvironment) {
  setenv("ZEVRPP_THREADS", "3", 1);
  EXPECT_EQ(default_threads(), 3);
  setenv("ZEVRPP_THREADS", "zero", 1);
  EXPECT_GE(default_threads(), 1);
  unsetenv("ZEVRPP_THREADS");
}
