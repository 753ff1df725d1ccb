#include <benchmark/benchmark.h>

#include <random>

#include "zevrpp/fit/softmax_affine.hpp"
#include "zevrpp/gp/solver.hpp"
#include "zevrpp/model/model.hpp"
#include "zevrpp/oracles/random_instances.hpp"

using namespace zevrpp;

namespace {

std::string scenario(const char* name) { return std::string(ZEVRPP_DATA_DIR) + "/scenarios/" + name; }

const model::ModelFits& fits() {
  static const model::ModelFits f = model::build_fits(model::load_scenario(scenario("toy.ini"), "mixed"));
  return f;
}

void BM_ToyGp(benchmark::State& st) {
  gp::Problem p;
  auto x1 = p.add_var("x1"), x2 = p.add_var("x2");
  gp::Monomial m1(x1), m2(x2);
  p.minimize(gp::Expr(m1.pow(-1)));
  p.add(gp::ge(m2, gp::Expr(gp::Posynomial({gp::Monomial(0.5) * m1.pow(-1), gp::Monomial(0.05) * m1.pow(2)}))));
  p.add(gp::le(gp::Expr(m2), gp::Monomial(2.0) * m1.pow(-1)));
  p.add(gp::le(gp::Expr(m2), gp::Monomial(3.0)));
  for (auto _ : st) benchmark::DoNotOptimize(gp::solve_convex_relaxation(p));
}
BENCHMARK(BM_ToyGp);

void BM_RandomGp(benchmark::State& st) {
  std::mt19937_64 rng(1);
  auto g = oracles::constructed_gp(rng, static_cast<int>(st.range(0)), static_cast<int>(st.range(0)) / 2,
                                   static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(gp::solve_convex_relaxation(g.problem));
}
BENCHMARK(BM_RandomGp)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& st) {
  auto sc = model::load_scenario(scenario("baltic.ini"), "M4");
  for (auto _ : st) benchmark::DoNotOptimize(model::assemble(sc, fits()));
}
BENCHMARK(BM_Assemble)->Unit(benchmark::kMillisecond);

void BM_Relaxation(benchmark::State& st, const char* file, const char* id) {
  auto a = model::assemble(model::load_scenario(scenario(file), id), fits());
  for (auto _ : st) benchmark::DoNotOptimize(gp::solve_convex_relaxation(a.problem));
}
BENCHMARK_CAPTURE(BM_Relaxation, toy, "toy.ini", "mixed")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Relaxation, M4, "baltic.ini", "M4")->Unit(benchmark::kMillisecond);

void BM_Migp(benchmark::State& st, const char* file, const char* id) {
  auto a = model::assemble(model::load_scenario(scenario(file), id), fits());
  for (auto _ : st) {
    auto s = gp::solve_migp(a.problem);
    st.counters["nodes"] = static_cast<double>(s.bnb_nodes);
  }
}
BENCHMARK_CAPTURE(BM_Migp, toy, "toy.ini", "mixed")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Migp, corridor, "corridor.ini", "mixed")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Migp, M4, "baltic.ini", "M4")->Unit(benchmark::kSecond)->Iterations(1);

void BM_FitRhoRho(benchmark::State& st) {
  auto d = fit::FitData::sample_1d([](double r) { return std::pow(r, r); }, 0.5, 1.5, 400);
  for (auto _ : st) benchmark::DoNotOptimize(fit::fit_softmax_affine(d, 2));
}
BENCHMARK(BM_FitRhoRho)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
