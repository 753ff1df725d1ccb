#include "zevrpp/app/run.hpp"

#include <fmt/format.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace zevrpp::app {

const model::ModelFits& FitsCache::get(const model::Scenario& sc) {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(sc.prm.beta, sc.fits_path);
  auto it = fits_.find(key);
  if (it == fits_.end()) it = fits_.emplace(key, model::build_fits(sc)).first;
  return it->second;
}

RunOutcome run_case(const model::Scenario& sc, FitsCache& fits) {
  auto t0 = std::chrono::steady_clock::now();
  RunOutcome out;
  auto a = model::assemble(sc, fits.get(sc));
  auto sol = gp::solve_migp(a.problem);
  out.status = sol.status;
  switch (sol.status) {
    case gp::Status::Optimal:
      try {
        out.fleet = model::extract_and_validate(a, sol);
        out.code = kOptimal;
      } catch (const model::ValidationError& e) {
        out.error = e.what();
        out.code = kValidationFailure;
      }
      break;
    case gp::Status::Infeasible:
      out.code = kInfeasible;
      break;
    default:
      out.code = kSolverLimit;
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

void apply_override(model::Scenario& sc, const std::string& name, double value) {
  if (name == "u_min")
    sc.u_min = value;
  else
    model::param_ref(sc.prm, name) = value;
}

std::pair<std::string, double> parse_override(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected name=value, got '" + text + "'");
  std::string name = text.substr(0, eq), v = text.substr(eq + 1);
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (v.empty() || *end != '\0') throw std::invalid_argument("bad value in '" + text + "'");
  return {name, x};
}

std::vector<SweepPoint> sweep(const model::Scenario& base, const std::string& param, double lo, double hi,
                              int steps, int threads, FitsCache& fits) {
  if (steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");
  if (param != "u_min") model::param_value(base.prm, param);  // unknown names throw here
  std::vector<SweepPoint> pts(static_cast<size_t>(steps));
  for (int k = 0; k < steps; ++k) pts[static_cast<size_t>(k)].value = lo + (hi - lo) * k / (steps - 1);

  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t k; (k = next++) < pts.size();) {
      auto sc = base;
      apply_override(sc, param, pts[k].value);
      try {
        sc.validate();
        pts[k].outcome = run_case(sc, fits);
      } catch (const std::exception& e) {
        pts[k].outcome.code = kInputError;
        pts[k].outcome.error = e.what();
      }
    }
  };
  threads = std::max(1, std::min(threads, steps));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return pts;
}

int default_threads() {
  if (const char* env = std::getenv("ZEVRPP_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace zevrpp::app
