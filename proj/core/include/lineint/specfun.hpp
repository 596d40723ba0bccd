#pragma once

// Double-precision special functions used by the closed-form reductions.
//
// erf/erfc are self-contained rational approximations (fdlibm lineage), so the
// results do not depend on the platform libm. All functions are pure and
// reentrant.

namespace lineint::specfun {

/// Error function, accurate to within 1 ulp over the whole real line.
double erf(double x) noexcept;

/// Complementary error function 1 - erf(x), computed without cancellation
/// for large positive x.
double erfc(double x) noexcept;

/// erf(x) - erf(y). Same-sign arguments are routed through erfc so that
/// differences of two tails keep their relative accuracy.
double erf_difference(double x, double y) noexcept;

/// Integral of erf over [a, b] via the integration-by-parts antiderivative
/// x erf(x) + exp(-x^2)/sqrt(pi). Antisymmetric in (a, b).
double erf_interval_integral(double a, double b) noexcept;

/// Standard normal cumulative distribution function.
double normal_cdf(double x) noexcept;

/// Correlation coefficient of a standard bivariate normal, |rho| <= 1.
class Correlation {
 public:
  /// Throws std::invalid_argument unless -1 <= rho <= 1.
  explicit Correlation(double rho);

  double value() const noexcept { return rho_; }

 private:
  double rho_;
};

/// Upper orthant probability P(Z1 > h, Z2 > k) (Genz's BVNU). Infinite
/// limits are allowed.
double bvn_upper(double h, double k, Correlation rho) noexcept;

/// Rectangle probability P(lo1 <= Z1 <= hi1, lo2 <= Z2 <= hi2) for a standard
/// bivariate normal with correlation rho. Bounds may be +-infinity.
/// Throws std::invalid_argument if a lower bound exceeds its upper bound or a
/// bound is NaN.
double bvn_rect(double lo1, double hi1, double lo2, double hi2, Correlation rho);

}  // namespace lineint::specfun
