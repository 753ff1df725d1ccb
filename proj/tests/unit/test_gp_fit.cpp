#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "zevrpp/fit/fit_io.hpp"
#include "zevrpp/fit/softmax_affine.hpp"
#include "zevrpp/gp/problem.hpp"
#include "zevrpp/oracles/convexity.hpp"

using namespace zevrpp;
using namespace zevrpp::fit;

namespace {

double rho_rho(double r) { return std::pow(r, r); }

// Independent log-space RMSE on a dense grid.
double dense_rmse(const std::function<double(double)>& model, const std::function<double(double)>& truth,
                  double lo, double hi, int n = 10000) {
  double s = 0;
  for (int i = 0; i < n; ++i) {
    double x = lo + (hi - lo) * i / (n - 1);
    double r = std::log(model(x)) - std::log(truth(x));
    s += r * r;
  }
  return std::sqrt(s / n);
}

}  // namespace

TEST(FitSoftmax, RecoversMonomial) {
  auto d = FitData::sample_1d([](double x) { return 3 * std::pow(x, 1.5); }, 0.5, 4.0, 50);
  auto f = fit_softmax_affine(d, 1);
  EXPECT_NEAR(std::exp(f.b[0]), 3.0, 1e-10);
  EXPECT_NEAR(f.a(0, 0), 1.5, 1e-10);
  EXPECT_LE(f.rmse_log, 1e-10);
}

TEST(FitSoftmax, K1IsLinearLeastSquares) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0.5, 3.0);
  std::vector<std::vector<double>> x;
  std::vector<double> v;
  for (int i = 0; i < 40; ++i) {
    double a = U(rng), b = U(rng);
    x.push_back({a, b});
    v.push_back(1 + a * a / b + std::sqrt(b));
  }
  auto d = FitData::from_samples(x, v);
  auto f = fit_softmax_affine(d, 1);
  Eigen::MatrixXd A(d.size(), 3);
  A << d.y, Eigen::VectorXd::Ones(d.size());
  Eigen::VectorXd s = (A.transpose() * A).ldlt().solve(A.transpose() * d.g);
  EXPECT_NEAR(f.a(0, 0), s[0], 1e-12);
  EXPECT_NEAR(f.a(0, 1), s[1], 1e-12);
  EXPECT_NEAR(f.b[0], s[2], 1e-12);
}

TEST(FitSoftmax, RankDeficientK1Throws) {
  auto d = FitData::from_samples({{2.0}, {2.0}, {2.0}}, {1.0, 2.0, 3.0});
  EXPECT_THROW(fit_softmax_affine(d, 1), std::invalid_argument);
}

TEST(FitSoftmax, RhoPowerRhoTwoTerms) {
  auto d = FitData::sample_1d(rho_rho, 1.0, 1.6, 500);
  auto p = fit_posynomial_power(d, 2);
  EXPECT_EQ(p.c.size(), 2u);
  EXPECT_LE(p.rmse_log, 1e-4);
  double dense = dense_rmse([&](double r) { return p.eval({r}); }, rho_rho, 1.0, 1.6);
  EXPECT_LE(dense, 1e-4);
}

TEST(FitSoftmax, LadderIsMonotone) {
  auto d = FitData::sample_1d(rho_rho, 1.0, 1.6, 200);
  auto ladder = fit_softmax_affine_ladder(d, 4);
  for (size_t k = 1; k < ladder.size(); ++k) EXPECT_LE(ladder[k].rmse_log, ladder[k - 1].rmse_log + 1e-12);

  std::vector<std::vector<double>> x;
  std::vector<double> v;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) {
      double a = 0.5 + 0.25 * i, b = 0.5 + 0.2 * j;
      x.push_back({a, b});
      v.push_back(a * a + 2 / b + a * b);
    }
  auto d2 = FitData::from_samples(x, v);
  auto l2 = fit_softmax_affine_ladder(d2, 3);
  for (size_t k = 1; k < l2.size(); ++k) EXPECT_LE(l2[k].rmse_log, l2[k - 1].rmse_log + 1e-12);
}

TEST(FitSoftmax, FittedSurrogateIsLogConvex) {
  auto d = FitData::sample_1d(rho_rho, 1.0, 1.6, 200);
  auto f = fit_softmax_affine(d, 3);
  gp::Problem p;
  auto r = p.add_var("r");
  std::mt19937_64 rng(5);
  auto rep = oracles::sample_convexity(f.surrogate({r}), rng, 1000, {}, 1.0);
  EXPECT_LE(rep.worst, 1e-12);
  EXPECT_NEAR(gp::evaluate(f.surrogate({r}), {{r.id, 1.3}}), f.eval({1.3}), 1e-12);
}

TEST(FitPosyPower, ConstantData) {
  auto d = FitData::sample_1d([](double) { return 1.0; }, 1.0, 2.0, 20);
  auto p = fit_posynomial_power(d, 3);
  ASSERT_EQ(p.c.size(), 1u);
  EXPECT_NEAR(p.c[0], 1.0, 1e-12);
  EXPECT_NEAR(p.e[0][0], 0.0, 1e-12);
}

TEST(FitPosyPower, PublishedFrCritFitMatchesRhoPowerRho) {
  // The printed bound, read with a fixed Fr_crit, against rho^rho on rho in [1, 1.6].
  auto published = [](double fr) {
    return std::pow(0.1528 * std::pow(fr, 1.537) + 0.9672 * std::pow(fr, -0.008538), 1 / 0.02608);
  };
  const double fr_crit = 0.28688;
  double err = dense_rmse([&](double r) { return published(r * fr_crit); }, rho_rho, 1.0, 1.6);
  EXPECT_LE(err, 1e-3);
}

TEST(RmseLog, Examples) {
  auto d = FitData::sample_1d([](double x) { return 2 * x; }, 1.0, 2.0, 10);
  auto f = fit_softmax_affine(d, 1);
  EXPECT_NEAR(rmse_log(f, d), 0.0, 1e-14);
  SoftmaxAffineFit c;
  c.a = Eigen::MatrixXd::Zero(1, 1);
  c.b = Eigen::VectorXd::Zero(1);
  auto d2 = FitData::sample_1d([](double) { return 2.0; }, 1.0, 2.0, 10);
  EXPECT_NEAR(rmse_log(c, d2), std::log(2.0), 1e-15);
}

TEST(FitIo, RoundTrip) {
  auto d = FitData::sample_1d(rho_rho, 1.0, 1.6, 100);
  FitTable t;
  t["rho"] = {fit_softmax_affine(d, 2), 1.0, 1.6};
  const std::string path = ::testing::TempDir() + "fits_roundtrip.ini";
  save_fits(path, t);
  auto back = load_fits(path);
  ASSERT_EQ(back.count("rho"), 1u);
  const auto& a = t["rho"].fit;
  const auto& b = back["rho"].fit;
  EXPECT_EQ(a.K, b.K);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.a, b.a);
  EXPECT_EQ(a.b, b.b);
  EXPECT_EQ(back["rho"].hi, 1.6);
  std::remove(path.c_str());
}

TEST(FitIo, MalformedIsLocated) {
  const std::string path = ::testing::TempDir() + "fits_bad.ini";
  {
    std::FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("[cr]\nK = 1\nn = 1\nalpha = 1\na = 1.0x\nb = 0\n", f);
    std::fclose(f);
  }
  try {
    load_fits(path);
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("[cr] a"), std::string::npos) << e.what();
  }
  std::remove(path.c_str());
}
