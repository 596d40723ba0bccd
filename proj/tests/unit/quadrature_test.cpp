#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "frozen_values.hpp"
#include "lineint/bench.hpp"
#include "lineint/quadrature.hpp"

using lineint::Box;
using lineint::IntegralResult;
using lineint::OracleOptions;
using lineint::QuadStatus;
using lineint::RuleLevel;
using lineint::Tolerance;

TEST(Tolerance, Validates) {
  EXPECT_THROW(Tolerance(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(Tolerance(-1e-8, 1e-8), std::invalid_argument);
  EXPECT_THROW(Tolerance(1e-8, std::nan("")), std::invalid_argument);
  EXPECT_NO_THROW(Tolerance(0.0, 1e-8));
  EXPECT_EQ(Tolerance::sqrt_epsilon().eps_abs, 1.4901161193847656e-8);
  EXPECT_EQ(Tolerance::oracle_default().eps_rel, 1e-15);
}

TEST(Qng, ConstantAtFirstRule) {
  const IntegralResult r = lineint::qng_1d([](double) { return 1.0; }, 0.0, 1.0,
                                           Tolerance::sqrt_epsilon());
  EXPECT_NEAR(r.value, 1.0, 1e-15);
  EXPECT_EQ(r.level, RuleLevel::kGK21);
  EXPECT_EQ(r.evaluations, 21);
  EXPECT_TRUE(r.converged());
}

TEST(Qng, PolynomialsThroughDegree19AtFirstRule) {
  for (int deg = 0; deg <= 19; ++deg) {
    const IntegralResult r = lineint::qng_1d([deg](double x) { return std::pow(x, deg); }, 0.0,
                                             1.0, Tolerance::sqrt_epsilon());
    const double want = 1.0 / (deg + 1);
    EXPECT_NEAR(r.value, want, 5e-15 * want) << deg;
    EXPECT_EQ(r.level, RuleLevel::kGK21) << deg;
  }
}

TEST(Qng, NarrowGaussian) {
  const IntegralResult r = lineint::qng_1d(
      [](double x) { return std::exp(-50.0 * (x - 0.5) * (x - 0.5)); }, 0.0, 1.0,
      Tolerance::sqrt_epsilon());
  EXPECT_TRUE(r.converged());
  EXPECT_NEAR(r.value, lineint::frozen::kNarrowGaussian, 1e-12);
  EXPECT_GE(r.abs_error, std::fabs(r.value - lineint::frozen::kNarrowGaussian));
}

TEST(Qng, EscalatesAndSignalsFailure) {
  // A kink defeats every rule in the sequence.
  const IntegralResult r =
      lineint::qng_1d([](double x) { return std::fabs(x - 0.3); }, 0.0, 1.0, Tolerance(1e-14, 0));
  EXPECT_EQ(r.level, RuleLevel::kGK87);
  EXPECT_EQ(r.status, QuadStatus::kToleranceNotReached);
  EXPECT_NEAR(r.value, 0.29, 1e-4);
}

TEST(Qng, RejectsReversedInterval) {
  EXPECT_THROW(lineint::qng_1d([](double) { return 1.0; }, 1.0, 0.0, Tolerance::sqrt_epsilon()),
               std::invalid_argument);
}

TEST(Qng, Linear) {
  auto f = [](double x) { return std::sin(3 * x) + x * x; };
  auto g = [](double x) { return std::exp(-x) / (1 + x); };
  const double alpha = 2.5;
  const double beta = -0.75;
  const Tolerance tol = Tolerance::sqrt_epsilon();
  const double combined =
      lineint::qng_1d([&](double x) { return alpha * f(x) + beta * g(x); }, 0.0, 2.0, tol).value;
  const double separate = alpha * lineint::qng_1d(f, 0.0, 2.0, tol).value +
                          beta * lineint::qng_1d(g, 0.0, 2.0, tol).value;
  EXPECT_NEAR(combined, separate, 1e-14);
}

TEST(Qng, NonNegativeIntegrand) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> centre(-1.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const double c = centre(rng);
    const IntegralResult r = lineint::qng_1d(
        [c](double x) { return std::exp(-200 * (x - c) * (x - c)); }, 0.0, 1.0,
        Tolerance::sqrt_epsilon());
    EXPECT_GE(r.value, -r.abs_error);
  }
}

TEST(Simpson, ConstantExact) {
  for (int p : {1, 2, 7, 50}) {
    EXPECT_NEAR(lineint::simpson_2d([](double, double) { return 1.0; }, p), 1.0, 1e-14);
  }
}

TEST(Simpson, CubicExact) {
  EXPECT_NEAR(lineint::simpson_2d([](double t, double s) { return t * t * t * s * s * s; }, 1),
              1.0 / 16.0, 1e-16);
}

TEST(Simpson, RejectsBadP) {
  EXPECT_THROW(lineint::simpson_2d([](double, double) { return 1.0; }, 0), std::invalid_argument);
}

TEST(Simpson, GaussianRefinement) {
  auto f = [](double t, double s) { return std::exp(-0.5 * (t * t + s * s)); };
  const double e10 = std::fabs(lineint::simpson_2d(f, 10) - lineint::frozen::kGaussSquare);
  const double e100 = std::fabs(lineint::simpson_2d(f, 100) - lineint::frozen::kGaussSquare);
  EXPECT_LT(e10, 1e-6);
  EXPECT_GE(e10 / e100, 1e3);
}

TEST(Oracle, ConstantOnInitialGrid) {
  OracleOptions single;
  single.initial_grid = 1;
  const IntegralResult one =
      lineint::oracle_2d([](double, double) { return 1.0; }, Tolerance::oracle_default(), Box{}, single);
  EXPECT_EQ(one.value, 1.0);
  EXPECT_EQ(one.evaluations, 225);
  const IntegralResult r =
      lineint::oracle_2d([](double, double) { return 1.0; }, Tolerance::oracle_default());
  EXPECT_NEAR(r.value, 1.0, 1e-15);
  EXPECT_EQ(r.evaluations, 16 * 225);
  EXPECT_EQ(r.level, RuleLevel::kAdaptive);
  EXPECT_TRUE(r.converged());
}

TEST(Oracle, Bilinear) {
  const IntegralResult r =
      lineint::oracle_2d([](double t, double s) { return t * s; }, Tolerance::oracle_default());
  EXPECT_NEAR(r.value, 0.25, 1e-15);
}

TEST(Oracle, GeneralBox) {
  Box box{-1.0, 2.0, 0.5, 1.5};
  const IntegralResult r = lineint::oracle_2d([](double t, double s) { return t * t + s; },
                                              Tolerance::oracle_default(), box);
  // int_{-1}^{2} t^2 dt * 1 + 3 * int_{0.5}^{1.5} s ds = 3 + 3
  EXPECT_NEAR(r.value, 6.0, 1e-14);
}

TEST(Oracle, Set1Pair0) {
  const lineint::bench::PairSample pair =
      lineint::bench::generate_pair(lineint::bench::SetSpec(1, 1, 6, 42), 0);
  const IntegralResult r = lineint::bench::oracle_value(pair);
  EXPECT_TRUE(r.converged());
  EXPECT_NEAR(r.value, lineint::frozen::kDoubleSet1Pair0, 2e-15);
}

TEST(Oracle, AgreesWithFineSimpson) {
  for (int set = 1; set <= 3; ++set) {
    for (int k = 0; k < 2; ++k) {
      const auto pair = lineint::bench::generate_pair(lineint::bench::SetSpec(set, 2, 6, 5), k);
      // Sets 1-3 have diagonal V.
      const Eigen::VectorXd d = pair.v.matrix().diagonal();
      auto f = [&](double t, double s) {
        double q = 0.0;
        for (int m = 0; m < 6; ++m) {
          const double r = pair.u(m) + t * pair.w_i(m) - s * pair.w_j(m);
          q += d(m) * r * r;
        }
        return std::exp(-0.5 * q);
      };
      const double scale = pair.w_i.norm() * pair.w_j.norm();
      const double oracle = lineint::oracle_2d(f, Tolerance::oracle_default()).value * scale;
      const double simpson = lineint::simpson_2d(f, 2000) * scale;
      EXPECT_NEAR(oracle, simpson, 1e-10) << "set " << set << " pair " << k;
    }
  }
}

TEST(Oracle, SignalsDepthCap) {
  OracleOptions opts;
  opts.max_depth = 3;
  const IntegralResult r = lineint::oracle_2d(
      [](double t, double s) { return (t + s < 0.7) ? 1.0 : 0.0; }, Tolerance::oracle_default(),
      Box{}, opts);
  EXPECT_EQ(r.status, QuadStatus::kDepthCapReached);
  EXPECT_NEAR(r.value, 0.245, 0.05);
}

TEST(Oracle, InitialGridFindsNarrowPeak) {
  // A single 15x15 panel samples this peak too sparsely to see it.
  auto f = [](double t, double s) {
    return std::exp(-1e5 * ((t - 0.37) * (t - 0.37) + (s - 0.61) * (s - 0.61)));
  };
  const double want = std::numbers::pi / 1e5;
  OracleOptions single;
  single.initial_grid = 1;
  const IntegralResult coarse = lineint::oracle_2d(f, Tolerance(1e-20, 1e-12), Box{}, single);
  const IntegralResult r = lineint::oracle_2d(f, Tolerance(1e-20, 1e-12));
  EXPECT_GT(std::fabs(coarse.value - want), 1e-3 * want);
  EXPECT_NEAR(r.value, want, 1e-12 * want);
  EXPECT_THROW(lineint::oracle_2d(f, Tolerance::oracle_default(), Box{}, OracleOptions{0, 50, 10}),
               std::invalid_argument);
}

TEST(Oracle, SignalsPanelBudget) {
  OracleOptions opts;
  opts.max_panels = 16;
  const IntegralResult r = lineint::oracle_2d(
      [](double t, double s) { return std::sqrt(std::fabs(t - s)); }, Tolerance::oracle_default(),
      Box{}, opts);
  EXPECT_EQ(r.status, QuadStatus::kDepthCapReached);
}

TEST(Oracle, NonNegativeIntegrand) {
  const IntegralResult r = lineint::oracle_2d(
      [](double t, double s) { return std::exp(-400 * ((t - 0.3) * (t - 0.3) + (s - 0.9) * (s - 0.9))); },
      Tolerance::oracle_default());
  EXPECT_TRUE(r.converged());
  EXPECT_GE(r.value, 0.0);
}

TEST(Oracle, Reproducible) {
  auto f = [](double t, double s) { return std::cos(7 * t * s) * std::exp(-t); };
  const IntegralResult a = lineint::oracle_2d(f, Tolerance::oracle_default());
  const IntegralResult b = lineint::oracle_2d(f, Tolerance::oracle_default());
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.abs_error, b.abs_error);
}
