#include "zevrpp/oracles/enumeration.hpp"

namespace zevrpp::oracles {

EnumResult enumerate_migp(const gp::Problem& p, const std::vector<double>& lb,
                          const std::vector<double>& ub, const gp::Tolerances& tol) {
  EnumResult out;
  const size_t n = lb.size();
  std::vector<double> cur = lb;
  for (;;) {
    ++out.points;
    auto s = gp::solve_relaxation_bounded(p, cur, cur, tol);
    if (s.status == gp::Status::Optimal && (!out.feasible || s.objective < out.objective)) {
      out.feasible = true;
      out.objective = s.objective;
      out.ints = cur;
    }
    size_t k = n;
    while (k > 0) {
      --k;
      if (cur[k] < ub[k]) {
        cur[k] += 1;
        for (size_t j = k + 1; j < n; ++j) cur[j] = lb[j];
        break;
      }
      if (k == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace zevrpp::oracles
