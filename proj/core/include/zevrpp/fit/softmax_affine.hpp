#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "zevrpp/gp/expr.hpp"

namespace zevrpp::fit {

struct FitData {
  Eigen::MatrixXd y;  // log x, one row per sample
  Eigen::VectorXd g;  // log f

  static FitData from_samples(const std::vector<std::vector<double>>& x, const std::vector<double>& f);
  // 1-D helper: n evenly spaced points on [lo, hi].
  static FitData sample_1d(const std::function<double(double)>& f, double lo, double hi, int n);

  int size() const { return static_cast<int>(g.size()); }
  int dim() const { return static_cast<int>(y.cols()); }
};

// f_SMA(y) = (1/alpha) log sum_k exp(alpha (b_k + a_k . y))
struct SoftmaxAffineFit {
  int K = 1;
  double alpha = 1.0;
  Eigen::MatrixXd a;  // K x n
  Eigen::VectorXd b;  // K
  double rmse_log = 0.0;

  double eval_log(const Eigen::VectorXd& y) const;
  double eval(const std::vector<double>& x) const;

  // Terms of the equivalent posynomial bound sum_k c_k prod x^{e_k} <= f^alpha.
  gp::Posynomial posynomial(const std::vector<gp::Monomial>& x) const;
  // Upper surrogate (sum_k ...)^(1/alpha), usable as f >= surrogate.
  gp::Expr surrogate(const std::vector<gp::Monomial>& x) const;
};

struct FitOptions {
  int restarts = 8;
  std::vector<double> alpha_seeds{1.0, 4.0, 16.0, 64.0};
  int max_evals = 2000;
};

SoftmaxAffineFit fit_softmax_affine(const FitData& data, int K, const FitOptions& opt = {});

// Best fits for K = 1..K_max, each seeded from the previous one so rmse is nonincreasing.
std::vector<SoftmaxAffineFit> fit_softmax_affine_ladder(const FitData& data, int K_max,
                                                        const FitOptions& opt = {});

double rmse_log(const SoftmaxAffineFit& fit, const FitData& data);

// r^{alpha_p} >= sum_k c_k prod x^{e_k}
struct PosynomialPowerFit {
  double alpha_p = 1.0;
  std::vector<double> c;
  std::vector<std::vector<double>> e;
  double rmse_log = 0.0;

  double eval(const std::vector<double>& x) const;
  gp::Posynomial posynomial(const std::vector<gp::Monomial>& x) const;
  static PosynomialPowerFit from_softmax(const SoftmaxAffineFit& s);
};

PosynomialPowerFit fit_posynomial_power(const FitData& data, int K,
                                        std::pair<double, double> power_search = {0.01, 100.0});

}  // namespace zevrpp::fit
