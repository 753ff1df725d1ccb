#include "zevrpp/fit/softmax_affine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/NonLinearOptimization>

namespace zevrpp::fit {

using Eigen::MatrixXd;
using Eigen::VectorXd;

FitData FitData::from_samples(const std::vector<std::vector<double>>& x, const std::vector<double>& f) {
  if (x.size() != f.size() || x.empty()) throw std::invalid_argument("fit data size mismatch");
  FitData d;
  const auto n = static_cast<Eigen::Index>(x.front().size());
  d.y.resize(static_cast<Eigen::Index>(x.size()), n);
  d.g.resize(static_cast<Eigen::Index>(x.size()));
  for (size_t i = 0; i < x.size(); ++i) {
    if (static_cast<Eigen::Index>(x[i].size()) != n) throw std::invalid_argument("ragged fit data");
    if (!(f[i] > 0)) throw std::invalid_argument("fit data must be positive");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!(x[i][static_cast<size_t>(j)] > 0)) throw std::invalid_argument("fit data must be positive");
      d.y(static_cast<Eigen::Index>(i), j) = std::log(x[i][static_cast<size_t>(j)]);
    }
    d.g[static_cast<Eigen::Index>(i)] = std::log(f[i]);
  }
  return d;
}

FitData FitData::sample_1d(const std::function<double(double)>& f, double lo, double hi, int n) {
  std::vector<std::vector<double>> x;
  std::vector<double> v;
  for (int i = 0; i < n; ++i) {
    double t = lo + (hi - lo) * i / (n - 1);
    x.push_back({t});
    v.push_back(f(t));
  }
  return from_samples(x, v);
}

namespace {

double lse_scaled(const VectorXd& z, double alpha, VectorXd* p) {
  double m = (alpha * z).maxCoeff();
  VectorXd e = (alpha * z.array() - m).exp().matrix();
  double s = e.sum();
  if (p) *p = e / s;
  return (m + std::log(s)) / alpha;
}

struct Params {
  int K, n;
  Eigen::Index size() const { return K * n + K + 1; }
};

SoftmaxAffineFit unpack(const VectorXd& x, Params P) {
  SoftmaxAffineFit f;
  f.K = P.K;
  f.a.resize(P.K, P.n);
  for (int k = 0; k < P.K; ++k)
    for (int j = 0; j < P.n; ++j) f.a(k, j) = x[k * P.n + j];
  f.b = x.segment(P.K * P.n, P.K);
  f.alpha = std::exp(x[P.K * P.n + P.K]);
  return f;
}

VectorXd pack(const SoftmaxAffineFit& f) {
  Params P{f.K, static_cast<int>(f.a.cols())};
  VectorXd x(P.size());
  for (int k = 0; k < P.K; ++k)
    for (int j = 0; j < P.n; ++j) x[k * P.n + j] = f.a(k, j);
  x.segment(P.K * P.n, P.K) = f.b;
  x[P.K * P.n + P.K] = std::log(f.alpha);
  return x;
}

struct Residual {
  using Scalar = double;
  using InputType = VectorXd;
  using ValueType = VectorXd;
  using JacobianType = MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const FitData& d;
  Params P;
  Residual(const FitData& data, Params p) : d(data), P(p) {}
  int inputs() const { return static_cast<int>(P.size()); }
  int values() const { return d.size(); }

  // z = a y_i + b for every sample, as an N x K matrix.
  MatrixXd affine(const SoftmaxAffineFit& f) const {
    return (d.y * f.a.transpose()).rowwise() + f.b.transpose();
  }

  int operator()(const VectorXd& x, VectorXd& r) const {
    auto f = unpack(x, P);
    MatrixXd z = f.alpha * affine(f);
    VectorXd m = z.rowwise().maxCoeff();
    r = ((m.array() + (z.colwise() - m).array().exp().rowwise().sum().log()) / f.alpha).matrix() - d.g;
    return r.allFinite() ? 0 : -1;
  }

  int df(const VectorXd& x, MatrixXd& J) const {
    auto f = unpack(x, P);
    MatrixXd z = affine(f);
    MatrixXd e = f.alpha * z;
    VectorXd m = e.rowwise().maxCoeff();
    e = (e.colwise() - m).array().exp().matrix();
    VectorXd s = e.rowwise().sum();
    VectorXd v = ((m.array() + s.array().log()) / f.alpha).matrix();
    MatrixXd p = s.cwiseInverse().asDiagonal() * e;
    for (int k = 0; k < P.K; ++k) {
      for (int j = 0; j < P.n; ++j) J.col(k * P.n + j) = p.col(k).cwiseProduct(d.y.col(j));
      J.col(P.K * P.n + k) = p.col(k);
    }
    J.col(P.K * P.n + P.K) = p.cwiseProduct(z).rowwise().sum() - v;
    return 0;
  }
};

SoftmaxAffineFit closed_form_monomial(const FitData& d) {
  MatrixXd A(d.size(), d.dim() + 1);
  A << d.y, VectorXd::Ones(d.size());
  Eigen::ColPivHouseholderQR<MatrixXd> qr(A);
  if (qr.rank() < A.cols()) throw std::invalid_argument("rank-deficient data for monomial fit");
  VectorXd s = qr.solve(d.g);
  SoftmaxAffineFit f;
  f.K = 1;
  f.alpha = 1.0;
  f.a = s.head(d.dim()).transpose();
  f.b = s.tail(1);
  f.rmse_log = rmse_log(f, d);
  return f;
}

// Affine least squares on each of K slabs along the widest coordinate.
SoftmaxAffineFit slab_seed(const FitData& d, int K, double alpha, std::mt19937_64* jitter) {
  Eigen::Index col = 0;
  double widest = -1;
  for (Eigen::Index j = 0; j < d.y.cols(); ++j) {
    double w = d.y.col(j).maxCoeff() - d.y.col(j).minCoeff();
    if (w > widest) widest = w, col = j;
  }
  std::vector<int> order(static_cast<size_t>(d.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d.y(i, col) < d.y(j, col); });

  std::vector<double> cuts(static_cast<size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) cuts[static_cast<size_t>(k)] = static_cast<double>(k) / K;
  if (jitter) {
    std::uniform_real_distribution<double> U(-0.3, 0.3);
    for (int k = 1; k < K; ++k) cuts[static_cast<size_t>(k)] += U(*jitter) / K;
  }

  SoftmaxAffineFit f;
  f.K = K;
  f.alpha = alpha;
  f.a.resize(K, d.dim());
  f.b.resize(K);
  const int need = d.dim() + 1;
  for (int k = 0; k < K; ++k) {
    int lo = static_cast<int>(cuts[static_cast<size_t>(k)] * d.size());
    int hi = static_cast<int>(cuts[static_cast<size_t>(k) + 1] * d.size());
    if (hi - lo < need) {
      lo = std::max(0, std::min(lo, d.size() - need));
      hi = lo + need;
    }
    FitData s;
    s.y.resize(hi - lo, d.dim());
    s.g.resize(hi - lo);
    for (int i = lo; i < hi; ++i) {
      s.y.row(i - lo) = d.y.row(order[static_cast<size_t>(i)]);
      s.g[i - lo] = d.g[order[static_cast<size_t>(i)]];
    }
    SoftmaxAffineFit m;
    try {
      m = closed_form_monomial(s);
    } catch (const std::invalid_argument&) {
      m = closed_form_monomial(d);
    }
    f.a.row(k) = m.a.row(0);
    f.b[k] = m.b[0];
  }
  return f;
}

SoftmaxAffineFit refine(const FitData& d, SoftmaxAffineFit start, int max_evals) {
  Params P{start.K, d.dim()};
  if (d.size() < P.size()) throw std::invalid_argument("too few points for softmax-affine fit");
  start.rmse_log = rmse_log(start, d);
  Residual fn(d, P);
  Eigen::LevenbergMarquardt<Residual> lm(fn);
  lm.parameters.xtol = 1e-15;
  lm.parameters.ftol = 1e-15;
  lm.parameters.maxfev = max_evals;
  VectorXd x = pack(start);
  lm.minimize(x);
  if (!x.allFinite()) return start;
  auto f = unpack(x, P);
  f.rmse_log = rmse_log(f, d);
  if (!std::isfinite(f.rmse_log) || f.rmse_log > start.rmse_log) return start;
  return f;
}

bool better(const SoftmaxAffineFit& a, const SoftmaxAffineFit& b) { return a.rmse_log < b.rmse_log; }

}  // namespace

double SoftmaxAffineFit::eval_log(const VectorXd& y) const {
  VectorXd z = a * y + b;
  return lse_scaled(z, alpha, nullptr);
}

double SoftmaxAffineFit::eval(const std::vector<double>& x) const {
  VectorXd y(static_cast<Eigen::Index>(x.size()));
  for (size_t i = 0; i < x.size(); ++i) y[static_cast<Eigen::Index>(i)] = std::log(x[i]);
  return std::exp(eval_log(y));
}

gp::Posynomial SoftmaxAffineFit::posynomial(const std::vector<gp::Monomial>& x) const {
  if (static_cast<Eigen::Index>(x.size()) != a.cols()) throw std::invalid_argument("fit arity mismatch");
  std::vector<gp::Monomial> terms;
  for (int k = 0; k < K; ++k) {
    gp::Monomial t(std::exp(alpha * b[k]));
    for (size_t j = 0; j < x.size(); ++j) t = t * x[j].pow(alpha * a(k, static_cast<Eigen::Index>(j)));
    terms.push_back(t);
  }
  return gp::Posynomial(std::move(terms));
}

gp::Expr SoftmaxAffineFit::surrogate(const std::vector<gp::Monomial>& x) const {
  gp::Expr p(posynomial(x));
  return alpha == 1.0 ? p : gp::pow(p, 1.0 / alpha);
}

double rmse_log(const SoftmaxAffineFit& fit, const FitData& data) {
  double s = 0.0;
  for (int i = 0; i < data.size(); ++i) {
    double r = fit.eval_log(data.y.row(i).transpose()) - data.g[i];
    s += r * r;
  }
  return std::sqrt(s / data.size());
}

SoftmaxAffineFit fit_softmax_affine(const FitData& data, int K, const FitOptions& opt) {
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  if (data.size() < K + 2) throw std::invalid_argument("too few points for the requested K");
  if (K == 1) return closed_form_monomial(data);
  std::mt19937_64 rng(12345);
  SoftmaxAffineFit best;
  bool have = false;
  for (int r = 0; r < std::max(1, opt.restarts); ++r) {
    double alpha = opt.alpha_seeds[static_cast<size_t>(r) % opt.alpha_seeds.size()];
    bool plain = r < static_cast<int>(opt.alpha_seeds.size());
    auto f = refine(data, slab_seed(data, K, alpha, plain ? nullptr : &rng), opt.max_evals);
    if (!have || better(f, best)) best = f, have = true;
  }
  return best;
}

std::vector<SoftmaxAffineFit> fit_softmax_affine_ladder(const FitData& data, int K_max, const FitOptions& opt) {
  std::vector<SoftmaxAffineFit> out{closed_form_monomial(data)};
  for (int K = 2; K <= K_max; ++K) {
    const auto& prev = out.back();
    // Duplicating a term with b shifted by -log 2 / alpha reproduces prev exactly.
    SoftmaxAffineFit best;
    best.K = K;
    best.alpha = prev.alpha;
    best.a.resize(K, data.dim());
    best.b.resize(K);
    best.a.topRows(K - 1) = prev.a;
    best.b.head(K - 1) = prev.b;
    best.a.row(K - 1) = prev.a.row(K - 2);
    best.b[K - 1] = prev.b[K - 2] - std::log(2.0) / prev.alpha;
    best.b[K - 2] = best.b[K - 1];
    best.rmse_log = rmse_log(best, data);
    for (int j = 0; j < K - 1; ++j) {
      SoftmaxAffineFit s = best;
      s.a.topRows(K - 1) = prev.a;
      s.b.head(K - 1) = prev.b;
      s.a.row(K - 1) = prev.a.row(j);
      s.b[K - 1] = prev.b[j] - std::log(2.0) / prev.alpha;
      s.b[j] = s.b[K - 1];
      s.a(j, 0) += 0.05;
      s.a(K - 1, 0) -= 0.05;
      auto f = refine(data, s, opt.max_evals);
      if (better(f, best)) best = f;
    }
    auto fresh = fit_softmax_affine(data, K, opt);
    if (better(fresh, best)) best = fresh;
    out.push_back(best);
  }
  return out;
}

double PosynomialPowerFit::eval(const std::vector<double>& x) const {
  double s = 0.0;
  for (size_t k = 0; k < c.size(); ++k) {
    double t = c[k];
    for (size_t j = 0; j < x.size(); ++j) t *= std::pow(x[j], e[k][j]);
    s += t;
  }
  return std::pow(s, 1.0 / alpha_p);
}

gp::Posynomial PosynomialPowerFit::posynomial(const std::vector<gp::Monomial>& x) const {
  std::vector<gp::Monomial> terms;
  for (size_t k = 0; k < c.size(); ++k) {
    if (e[k].size() != x.size()) throw std::invalid_argument("fit arity mismatch");
    gp::Monomial t(c[k]);
    for (size_t j = 0; j < x.size(); ++j) t = t * x[j].pow(e[k][j]);
    terms.push_back(t);
  }
  return gp::Posynomial(std::move(terms));
}

PosynomialPowerFit PosynomialPowerFit::from_softmax(const SoftmaxAffineFit& s) {
  PosynomialPowerFit p;
  p.alpha_p = s.alpha;
  p.rmse_log = s.rmse_log;
  for (int k = 0; k < s.K; ++k) {
    p.c.push_back(std::exp(s.alpha * s.b[k]));
    std::vector<double> e;
    for (Eigen::Index j = 0; j < s.a.cols(); ++j) e.push_back(s.alpha * s.a(k, j));
    p.e.push_back(std::move(e));
  }
  return p;
}

PosynomialPowerFit fit_posynomial_power(const FitData& data, int K, std::pair<double, double> power_search) {
  auto mono = closed_form_monomial(data);
  if (mono.rmse_log <= 1e-12 || K == 1) return PosynomialPowerFit::from_softmax(mono);
  FitOptions opt;
  opt.alpha_seeds.clear();
  // Softmax alpha equals the posynomial power; seed across the search range.
  const int n = 6;
  for (int i = 0; i < n; ++i)
    opt.alpha_seeds.push_back(power_search.first *
                              std::pow(power_search.second / power_search.first, i / double(n - 1)));
  opt.restarts = 2 * n;
  return PosynomialPowerFit::from_softmax(fit_softmax_affine_ladder(data, K, opt).back());
}

}  // namespace zevrpp::fit
