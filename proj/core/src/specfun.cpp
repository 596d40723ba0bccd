#include "lineint/specfun.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

// erf/erfc follow the Sun fdlibm s_erf.c construction: a rational
// approximation around the origin, a second one about x = 1, and two
// asymptotic erfc fits out to |x| = 28, with exp(-x^2) evaluated as
// exp(-z^2 - 0.5625) * exp((z - x)(z + x) + R/S) for z = x with its low
// word cleared.

namespace lineint::specfun {

namespace {
constexpr double kSqrtPi = 1.772453850905516027298167483341145;
}
namespace {

constexpr double kTiny = 1e-300;
constexpr double kErx = 8.45062911510467529297e-01;
constexpr double kEfx = 1.28379167095512586316e-01;
constexpr double kEfx8 = 1.02703333676410069053e+00;

// erf on [0, 0.84375]
constexpr double pp0 = 1.28379167095512558561e-01;
constexpr double pp1 = -3.25042107247001499370e-01;
constexpr double pp2 = -2.84817495755985104766e-02;
constexpr double pp3 = -5.77027029648944159157e-03;
constexpr double pp4 = -2.37630166566501626084e-05;
constexpr double qq1 = 3.97917223959155352819e-01;
constexpr double qq2 = 6.50222499887672944485e-02;
constexpr double qq3 = 5.08130628187576562776e-03;
constexpr double qq4 = 1.32494738004321644526e-04;
constexpr double qq5 = -3.96022827877536812320e-06;

// erf on [0.84375, 1.25]
constexpr double pa0 = -2.36211856075265944077e-03;
constexpr double pa1 = 4.14856118683748331666e-01;
constexpr double pa2 = -3.72207876035701323847e-01;
constexpr double pa3 = 3.18346619901161753674e-01;
constexpr double pa4 = -1.10894694282396677476e-01;
constexpr double pa5 = 3.54783043256182359371e-02;
constexpr double pa6 = -2.16637559486879084300e-03;
constexpr double qa1 = 1.06420880400844228286e-01;
constexpr double qa2 = 5.40397917702171048937e-01;
constexpr double qa3 = 7.18286544141962662868e-02;
constexpr double qa4 = 1.26171219808761642112e-01;
constexpr double qa5 = 1.36370839120290507362e-02;
constexpr double qa6 = 1.19844998467991074170e-02;

// erfc on [1.25, 1/0.35]
constexpr double ra0 = -9.86494403484714822705e-03;
constexpr double ra1 = -6.93858572707181764372e-01;
constexpr double ra2 = -1.05586262253232909814e+01;
constexpr double ra3 = -6.23753324503260060396e+01;
constexpr double ra4 = -1.62396669462573470355e+02;
constexpr double ra5 = -1.84605092906711035994e+02;
constexpr double ra6 = -8.12874355063065934246e+01;
constexpr double ra7 = -9.81432934416914548592e+00;
constexpr double sa1 = 1.96512716674392571292e+01;
constexpr double sa2 = 1.37657754143519042600e+02;
constexpr double sa3 = 4.34565877475229228821e+02;
constexpr double sa4 = 6.45387271733267880336e+02;
constexpr double sa5 = 4.29008140027567833386e+02;
constexpr double sa6 = 1.08635005541779435134e+02;
constexpr double sa7 = 6.57024977031928170135e+00;
constexpr double sa8 = -6.04244152148580987438e-02;

// erfc on [1/0.35, 28]
constexpr double rb0 = -9.86494292470009928597e-03;
constexpr double rb1 = -7.99283237680523006574e-01;
constexpr double rb2 = -1.77579549177547519889e+01;
constexpr double rb3 = -1.60636384855821916062e+02;
constexpr double rb4 = -6.37566443368389627722e+02;
constexpr double rb5 = -1.02509513161107724954e+03;
constexpr double rb6 = -4.83519191608651397019e+02;
constexpr double sb1 = 3.03380607434824582924e+01;
constexpr double sb2 = 3.25792512996573918826e+02;
constexpr double sb3 = 1.53672958608443695994e+03;
constexpr double sb4 = 3.19985821950859553908e+03;
constexpr double sb5 = 2.55305040643316442583e+03;
constexpr double sb6 = 4.74528541206955367215e+02;
constexpr double sb7 = -2.24409524465858183362e+01;

std::int32_t high_word(double x) noexcept {
  return static_cast<std::int32_t>(std::bit_cast<std::uint64_t>(x) >> 32);
}

double clear_low_word(double x) noexcept {
  return std::bit_cast<double>(std::bit_cast<std::uint64_t>(x) & 0xffffffff00000000ULL);
}

double small_ratio(double z) noexcept {
  const double r = pp0 + z * (pp1 + z * (pp2 + z * (pp3 + z * pp4)));
  const double s = 1.0 + z * (qq1 + z * (qq2 + z * (qq3 + z * (qq4 + z * qq5))));
  return r / s;
}

double near_one_ratio(double s) noexcept {
  const double p = pa0 + s * (pa1 + s * (pa2 + s * (pa3 + s * (pa4 + s * (pa5 + s * pa6)))));
  const double q = 1.0 + s * (qa1 + s * (qa2 + s * (qa3 + s * (qa4 + s * (qa5 + s * qa6)))));
  return p / q;
}

// exp(-x^2 - 0.5625 + R/S) / x for x >= 1.25, the asymptotic erfc form.
double erfc_tail(double ax, bool use_first_fit) noexcept {
  const double s = 1.0 / (ax * ax);
  double r;
  double q;
  if (use_first_fit) {
    r = ra0 + s * (ra1 + s * (ra2 + s * (ra3 + s * (ra4 + s * (ra5 + s * (ra6 + s * ra7))))));
    q = 1.0 + s * (sa1 + s * (sa2 + s * (sa3 + s * (sa4 + s * (sa5 + s * (sa6 + s * (sa7 + s * sa8)))))));
  } else {
    r = rb0 + s * (rb1 + s * (rb2 + s * (rb3 + s * (rb4 + s * (rb5 + s * rb6)))));
    q = 1.0 + s * (sb1 + s * (sb2 + s * (sb3 + s * (sb4 + s * (sb5 + s * (sb6 + s * sb7))))));
  }
  const double z = clear_low_word(ax);
  return std::exp(-z * z - 0.5625) * std::exp((z - ax) * (z + ax) + r / q) / ax;
}

// x erfc(x) - exp(-x^2)/sqrt(pi): antiderivative of -erfc, tends to 0 as x -> inf.
double erfc_antiderivative(double x) noexcept {
  return x * erfc(x) - std::exp(-x * x) / kSqrtPi;
}

// Integral of erf over [lo, hi] with 0 <= lo <= hi, written as
// (hi - lo) - integral of erfc so that large arguments do not cancel.
double nonnegative_interval_integral(double lo, double hi) noexcept {
  return (hi - lo) + (erfc_antiderivative(lo) - erfc_antiderivative(hi));
}

}  // namespace

double erf(double x) noexcept {
  const std::int32_t hx = high_word(x);
  const std::int32_t ix = hx & 0x7fffffff;
  if (ix >= 0x7ff00000) {
    if (std::isnan(x)) return x;
    return x > 0 ? 1.0 : -1.0;
  }
  if (ix < 0x3feb0000) {  // |x| < 0.84375
    if (ix < 0x3e300000) {  // |x| < 2**-28
      if (ix < 0x00800000) return 0.125 * (8.0 * x + kEfx8 * x);
      return x + kEfx * x;
    }
    return x + x * small_ratio(x * x);
  }
  if (ix < 0x3ff40000) {  // |x| < 1.25
    const double ratio = near_one_ratio(std::fabs(x) - 1.0);
    return hx >= 0 ? kErx + ratio : -kErx - ratio;
  }
  if (ix >= 0x40180000) {  // |x| >= 6
    return hx >= 0 ? 1.0 - kTiny : kTiny - 1.0;
  }
  const double ax = std::fabs(x);
  const double r = erfc_tail(ax, ix < 0x4006DB6E);
  return hx >= 0 ? 1.0 - r : r - 1.0;
}

double erfc(double x) noexcept {
  const std::int32_t hx = high_word(x);
  const std::int32_t ix = hx & 0x7fffffff;
  if (ix >= 0x7ff00000) {
    if (std::isnan(x)) return x;
    return x > 0 ? 0.0 : 2.0;
  }
  if (ix < 0x3feb0000) {  // |x| < 0.84375
    if (ix < 0x3c700000) return 1.0 - x;  // |x| < 2**-56
    const double y = small_ratio(x * x);
    if (hx < 0x3fd00000) {  // x < 1/4
      return 1.0 - (x + x * y);
    }
    double r = x * y;
    r += (x - 0.5);
    return 0.5 - r;
  }
  if (ix < 0x3ff40000) {  // 0.84375 <= |x| < 1.25
    const double ratio = near_one_ratio(std::fabs(x) - 1.0);
    if (hx >= 0) return (1.0 - kErx) - ratio;
    return 1.0 + (kErx + ratio);
  }
  if (ix < 0x403c0000) {  // |x| < 28
    if (hx < 0 && ix >= 0x40180000) return 2.0 - kTiny;  // x <= -6
    const double r = erfc_tail(std::fabs(x), ix < 0x4006DB6D);
    return hx > 0 ? r : 2.0 - r;
  }
  return hx > 0 ? 0.0 : 2.0 - kTiny;
}

double erf_difference(double x, double y) noexcept {
  if (x > 0.5 && y > 0.5) return erfc(y) - erfc(x);
  if (x < -0.5 && y < -0.5) return erfc(-x) - erfc(-y);
  return erf(x) - erf(y);
}

double erf_interval_integral(double a, double b) noexcept {
  if (a == b) return 0.0;
  if (a > b) return -erf_interval_integral(b, a);
  // erf is odd, so the integral over [a, b] with b <= 0 mirrors [-b, -a].
  if (b <= 0.0) return -nonnegative_interval_integral(-b, -a);
  if (a >= 0.0) return nonnegative_interval_integral(a, b);
  return nonnegative_interval_integral(0.0, b) - nonnegative_interval_integral(0.0, -a);
}

double normal_cdf(double x) noexcept {
  return 0.5 * erfc(-x / std::numbers::sqrt2);
}

}  // namespace lineint::specfun
