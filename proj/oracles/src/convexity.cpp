#include "zevrpp/oracles/convexity.hpp"

#include <algorithm>
#include <cmath>

namespace zevrpp::oracles {

using namespace gp;

double log_space_value(const Constraint& c, const Assignment& u) {
  switch (c.form) {
    case ConstraintForm::PosyLE1:
      return log_eval(c.expr, u);
    case ConstraintForm::MonoEQ1:
      return log_eval(Expr(c.mono), u);
    case ConstraintForm::LogLE: {
      Assignment x;
      for (auto& [k, v] : u) x[k] = std::exp(v);
      return evaluate(Expr(c.posy), x) - log_eval(Expr(c.mono), u);
    }
  }
  return 0.0;
}

namespace {

template <class F>
ConvexityReport sample(F&& f, std::vector<VarId> vars, std::mt19937_64& rng, int samples,
                       const Assignment& center, double spread) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::uniform_real_distribution<double> box(-spread, spread), th(0.0, 1.0);
  ConvexityReport r;
  for (int s = 0; s < samples; ++s) {
    Assignment u, v, w;
    double t = th(rng);
    for (VarId id : vars) {
      auto it = center.find(id);
      double c0 = it == center.end() ? 0.0 : it->second;
      u[id] = c0 + box(rng);
      v[id] = c0 + box(rng);
      w[id] = t * u[id] + (1 - t) * v[id];
    }
    double fu = f(u), fv = f(v), fw = f(w);
    if (!std::isfinite(fu) || !std::isfinite(fv) || !std::isfinite(fw)) {
      ++r.skipped;
      continue;
    }
    double scale = std::max({1.0, std::abs(fu), std::abs(fv)});
    r.worst = std::max(r.worst, (fw - t * fu - (1 - t) * fv) / scale);
    ++r.samples;
  }
  return r;
}

}  // namespace

ConvexityReport sample_convexity(const Constraint& c, std::mt19937_64& rng, int samples,
                                 const Assignment& center, double spread) {
  std::vector<VarId> vars;
  if (c.form == ConstraintForm::PosyLE1) c.expr.collect_vars(vars);
  if (c.form == ConstraintForm::LogLE) Expr(c.posy).collect_vars(vars);
  if (c.form != ConstraintForm::PosyLE1) Expr(c.mono).collect_vars(vars);
  return sample([&](const Assignment& u) { return log_space_value(c, u); }, vars, rng, samples,
                center, spread);
}

ConvexityReport sample_convexity(const Expr& e, std::mt19937_64& rng, int samples,
                                 const Assignment& center, double spread) {
  std::vector<VarId> vars;
  e.collect_vars(vars);
  return sample([&](const Assignment& u) { return log_eval(e, u); }, vars, rng, samples, center,
                spread);
}

}  // namespace zevrpp::oracles
