#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "frozen_values.hpp"
#include "lineint/kernel.hpp"
#include "reference.hpp"

using lineint::DimensionMismatch;
using lineint::Line;
using lineint::Matrix;
using lineint::QuadCoeffs;
using lineint::ScalingMatrix;
using lineint::Vector;
namespace lt = lineint::testing;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) v(k++) = x;
  return v;
}

Vector from_array(const double (&xs)[6]) {
  Vector v(6);
  for (int k = 0; k < 6; ++k) v(k) = xs[k];
  return v;
}

double single_line_reference(const Line& line, const Vector& z, const Matrix& v) {
  auto f = [&](double t) {
    const Vector r = line.start + t * line.span - z;
    return std::exp(-0.5 * lt::quad_form_plain(v, r));
  };
  return line.length() * lt::adaptive_gk15(f, 0.0, 1.0);
}

// Exponent with ti the parameter along the first line passed to
// quad_coeffs and tj along the second. Unswapped coefficients integrate t
// along the first line; swapped ones integrate t along the second.
double along_lines(const QuadCoeffs& q, double ti, double tj) {
  return q.swapped ? q.exponent(ti, tj) : q.exponent(tj, ti);
}

}  // namespace

TEST(ScalingMatrix, AcceptsSpd) {
  const ScalingMatrix v(Matrix::Identity(3, 3));
  EXPECT_EQ(v.dim(), 3);
  EXPECT_DOUBLE_EQ(v.quad_form(vec({1, 2, 3})), 14.0);
}

TEST(ScalingMatrix, RejectsInvalid) {
  EXPECT_THROW(ScalingMatrix(Matrix(0, 0)), std::invalid_argument);
  EXPECT_THROW(ScalingMatrix(Matrix::Ones(2, 3)), std::invalid_argument);
  Matrix asym(2, 2);
  asym << 1, 0.1, 0.2, 1;
  EXPECT_THROW(ScalingMatrix{asym}, std::invalid_argument);
  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  EXPECT_THROW(ScalingMatrix{indefinite}, std::invalid_argument);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ScalingMatrix{nan}, std::invalid_argument);
  EXPECT_THROW(ScalingMatrix::diagonal(vec({1.0, 0.0})), std::invalid_argument);
}

TEST(Line, Validates) {
  EXPECT_THROW(Line(vec({1, 2}), vec({1})), DimensionMismatch);
  EXPECT_THROW(Line(Vector(0), Vector(0)), std::invalid_argument);
  EXPECT_THROW(Line(vec({1, std::numeric_limits<double>::infinity()}), vec({0, 0})),
               std::invalid_argument);
  const Line point(vec({1, 2}), vec({0, 0}));
  EXPECT_EQ(point.length(), 0.0);
}

TEST(SeKernel, Examples) {
  const ScalingMatrix i2 = ScalingMatrix::identity(2);
  EXPECT_EQ(lineint::se_kernel(vec({0.3, 0.4}), vec({0.3, 0.4}), i2), 1.0);
  EXPECT_NEAR(lineint::se_kernel(vec({0}), vec({2}), ScalingMatrix::identity(1)),
              0.135335283236613, 1e-15);
  EXPECT_NEAR(lineint::se_kernel(vec({1, 0}), vec({0, 1}), ScalingMatrix::diagonal(vec({0.5, 2}))),
              lineint::frozen::kSeKernelDiag, 1e-16);
}

TEST(SeKernel, DimensionMismatch) {
  EXPECT_THROW(lineint::se_kernel(vec({0, 0}), vec({0}), ScalingMatrix::identity(2)),
               DimensionMismatch);
}

TEST(SingleLineIntegral, ZeroSpanIsZero) {
  const Line point(vec({0.2, -0.4}), vec({0, 0}));
  EXPECT_EQ(lineint::single_line_integral(point, vec({1, 1}), ScalingMatrix::identity(2)), 0.0);
}

TEST(SingleLineIntegral, UnitLine) {
  const Line line(vec({0}), vec({1}));
  EXPECT_NEAR(lineint::single_line_integral(line, vec({0}), ScalingMatrix::identity(1)),
              lineint::frozen::kSingleLineUnit, 1e-15);
}

TEST(SingleLineIntegral, Set1Pair0) {
  const Line line(from_array(lineint::frozen::kSet1Pair0U),
                  from_array(lineint::frozen::kSet1Pair0Wi));
  EXPECT_NEAR(lineint::single_line_integral(line, Vector::Zero(6), ScalingMatrix::identity(6)),
              lineint::frozen::kSingleSet1Pair0, 1e-15);
}

TEST(SingleLineIntegral, DimensionMismatch) {
  const Line line(vec({0, 0}), vec({1, 0}));
  EXPECT_THROW(lineint::single_line_integral(line, vec({0}), ScalingMatrix::identity(2)),
               DimensionMismatch);
  EXPECT_THROW(lineint::single_line_integral(line, vec({0, 0}), ScalingMatrix::identity(3)),
               DimensionMismatch);
}

TEST(SingleLineIntegral, BoundedAndMatchesQuadrature) {
  std::mt19937_64 rng(21);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Matrix vm = lt::random_spd(rng, 6);
    const ScalingMatrix v(vm);
    const Line line(lt::random_vector(rng, 6, -1, 1), lt::random_vector(rng, 6, -1, 1));
    const Vector z = lt::random_vector(rng, 6, -1, 1);
    const double got = lineint::single_line_integral(line, z, v);
    ASSERT_GE(got, 0.0);
    ASSERT_LE(got, line.length());
    worst = std::max(worst, std::fabs(got - single_line_reference(line, z, vm)));
  }
  EXPECT_LE(worst, 1e-13);
}

TEST(SingleLineIntegral, FarAwayUnderflowsQuietly) {
  const Line line(vec({0, 0}), vec({1, 0}));
  const double got = lineint::single_line_integral(line, vec({0, 1e3}), ScalingMatrix::identity(2));
  EXPECT_EQ(got, 0.0);
}

TEST(QuadCoeffs, ZeroInputs) {
  const QuadCoeffs q =
      lineint::quad_coeffs(Vector::Zero(3), Vector::Zero(3), Vector::Zero(3), ScalingMatrix::identity(3));
  EXPECT_EQ(q.a, 0.0);
  EXPECT_EQ(q.b, 0.0);
  EXPECT_EQ(q.c, 0.0);
  EXPECT_EQ(q.d, 0.0);
  EXPECT_EQ(q.e, 0.0);
  EXPECT_EQ(q.f, 0.0);
  EXPECT_FALSE(q.swapped);
}

TEST(QuadCoeffs, ScalarExpansion) {
  const ScalingMatrix one = ScalingMatrix::identity(1);
  const QuadCoeffs q = lineint::quad_coeffs(vec({1}), vec({2}), vec({1}), one);
  EXPECT_FALSE(q.swapped);
  EXPECT_EQ(q.a, 1.0);
  EXPECT_EQ(q.b, 2.0);
  EXPECT_EQ(q.c, 4.0);
  EXPECT_EQ(q.d, 4.0);
  EXPECT_EQ(q.e, 4.0);
  EXPECT_EQ(q.f, 1.0);
}

TEST(QuadCoeffs, ScalarExpansionSwapped) {
  const ScalingMatrix one = ScalingMatrix::identity(1);
  const QuadCoeffs q = lineint::quad_coeffs(vec({1}), vec({1}), vec({2}), one);
  EXPECT_TRUE(q.swapped);
  EXPECT_EQ(q.a, 1.0);
  EXPECT_EQ(q.b, -2.0);
  EXPECT_EQ(q.c, -4.0);
  EXPECT_EQ(q.d, 4.0);
  EXPECT_EQ(q.e, 4.0);
  EXPECT_EQ(q.f, 1.0);
}

TEST(QuadCoeffs, TieDoesNotSwap) {
  const QuadCoeffs q = lineint::quad_coeffs(vec({1, 0}), vec({1, 0}), vec({0, 1}),
                                            ScalingMatrix::identity(2));
  EXPECT_FALSE(q.swapped);
}

TEST(QuadCoeffs, DimensionMismatch) {
  EXPECT_THROW(lineint::quad_coeffs(vec({1}), vec({1, 0}), vec({0, 1}), ScalingMatrix::identity(2)),
               DimensionMismatch);
}

TEST(QuadCoeffs, InvariantsOnRandomInputs) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    const int m = 1 + k % 6;
    const ScalingMatrix v(lt::random_spd(rng, m));
    const Vector u = lt::random_vector(rng, m, -2, 2);
    const Vector wi = lt::random_vector(rng, m, -2, 2);
    const Vector wj = lt::random_vector(rng, m, -2, 2);
    const QuadCoeffs q = lineint::quad_coeffs(u, wi, wj, v);
    ASSERT_GE(q.a, 0.0);
    ASSERT_GE(q.e, 0.0);
    ASSERT_GE(q.f, 0.0);
    ASSERT_LE(q.d * q.d, 4 * q.e * q.f + 1e-12 * (1 + 4 * q.e * q.f));
    ASSERT_LE(q.b * q.b, 4 * q.a * q.f + 1e-12 * (1 + 4 * q.a * q.f));
    ASSERT_LE(q.c * q.c, 4 * q.a * q.e + 1e-12 * (1 + 4 * q.a * q.e));
    const double s = unit(rng);
    const double t = unit(rng);
    ASSERT_GE(q.exponent(s, t), -1e-12);
  }
}

TEST(QuadCoeffs, ExponentIsTheSquaredNorm) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const ScalingMatrix v(lt::random_spd(rng, 4));
    const Vector u = lt::random_vector(rng, 4, -1, 1);
    const Vector wi = lt::random_vector(rng, 4, -1, 1);
    const Vector wj = lt::random_vector(rng, 4, -1, 1);
    const QuadCoeffs q = lineint::quad_coeffs(u, wi, wj, v);
    for (double ti : {0.0, 0.25, 1.0}) {
      for (double tj : {0.0, 0.6, 1.0}) {
        const double want = v.quad_form(u + ti * wi - tj * wj);
        EXPECT_NEAR(along_lines(q, ti, tj), want, 1e-13);
      }
    }
  }
}

TEST(QuadCoeffs, ExchangeGivesTransposedIntegrand) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const ScalingMatrix v(lt::random_spd(rng, 3));
    const Vector u = lt::random_vector(rng, 3, -1, 1);
    const Vector wi = lt::random_vector(rng, 3, -1, 1);
    const Vector wj = lt::random_vector(rng, 3, -1, 1);
    const QuadCoeffs q1 = lineint::quad_coeffs(u, wi, wj, v);
    const QuadCoeffs q2 = lineint::quad_coeffs(-u, wj, wi, v);
    for (int k = 0; k < 100; ++k) {
      const double ti = unit(rng);
      const double tj = unit(rng);
      ASSERT_NEAR(std::exp(-0.5 * along_lines(q1, ti, tj)),
                  std::exp(-0.5 * along_lines(q2, tj, ti)), 1e-14);
    }
  }
}
