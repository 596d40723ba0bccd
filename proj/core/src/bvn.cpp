#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "lineint/specfun.hpp"

namespace lineint::specfun {
namespace {

// Gauss-Legendre half-rules (negative abscissae on [-1, 1]) with 6, 12 and 20
// points, as used by Genz's BVNU.
struct HalfRule {
  int size;
  std::array<double, 10> x;
  std::array<double, 10> w;
};

constexpr HalfRule kRule6{
    3,
    {-0.9324695142031522, -0.6612093864662647, -0.2386191860831970},
    {0.1713244923791705, 0.3607615730481384, 0.4679139345726904}};

constexpr HalfRule kRule12{
    6,
    {-0.9815606342467191, -0.9041172563704750, -0.7699026741943050, -0.5873179542866171,
     -0.3678314989981802, -0.1252334085114692},
    {0.04717533638651177, 0.1069393259953183, 0.1600783285433464, 0.2031674267230659,
     0.2334925365383547, 0.2491470458134029}};

constexpr HalfRule kRule20{
    10,
    {-0.9931285991850949, -0.9639719272779138, -0.9122344282513259, -0.8391169718222188,
     -0.7463319064601508, -0.6360536807265150, -0.5108670019508271, -0.3737060887154196,
     -0.2277858511416451, -0.07652652113349733},
    {0.01761400713915212, 0.04060142980038694, 0.06267204833410906, 0.08327674157670475,
     0.1019301198172404, 0.1181945319615184, 0.1316886384491766, 0.1420961093183821,
     0.1491729864726037, 0.1527533871307259}};

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bvnu_finite(double h, double k, double r) noexcept {
  const double ar = std::fabs(r);
  const HalfRule& rule = ar < 0.3 ? kRule6 : (ar < 0.75 ? kRule12 : kRule20);

  double hk = h * k;
  double bvn = 0.0;
  if (ar < 0.925) {
    const double hs = (h * h + k * k) / 2.0;
    const double asr = std::asin(r);
    for (int i = 0; i < rule.size; ++i) {
      double sn = std::sin(asr * (rule.x[i] + 1.0) / 2.0);
      bvn += rule.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      sn = std::sin(asr * (1.0 - rule.x[i]) / 2.0);
      bvn += rule.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
    }
    return bvn * asr / (2.0 * kTwoPi) + normal_cdf(-h) * normal_cdf(-k);
  }

  if (r < 0.0) {
    k = -k;
    hk = -hk;
  }
  if (ar < 1.0) {
    const double as = (1.0 - r) * (1.0 + r);
    double a = std::sqrt(as);
    const double bs = (h - k) * (h - k);
    const double c = (4.0 - hk) / 8.0;
    const double d = (12.0 - hk) / 16.0;
    bvn = a * std::exp(-(bs / as + hk) / 2.0) *
          (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
    if (hk > -160.0) {
      const double b = std::sqrt(bs);
      bvn -= std::exp(-hk / 2.0) * std::sqrt(kTwoPi) * normal_cdf(-b / a) * b *
             (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
    }
    a /= 2.0;
    for (int i = 0; i < rule.size; ++i) {
      double xs = a * (rule.x[i] + 1.0);
      xs *= xs;
      double rs = std::sqrt(1.0 - xs);
      bvn += a * rule.w[i] *
             (std::exp(-bs / (2.0 * xs) - hk / (1.0 + rs)) / rs -
              std::exp(-(bs / xs + hk) / 2.0) * (1.0 + c * xs * (1.0 + d * xs)));
      xs = as * (1.0 - rule.x[i]) * (1.0 - rule.x[i]) / 4.0;
      rs = std::sqrt(1.0 - xs);
      bvn += a * rule.w[i] * std::exp(-(bs / xs + hk) / 2.0) *
             (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
              (1.0 + c * xs * (1.0 + d * xs)));
    }
    bvn = -bvn / kTwoPi;
  }
  if (r > 0.0) {
    bvn += normal_cdf(-std::max(h, k));
  } else {
    bvn = -bvn + std::max(0.0, normal_cdf(-h) - normal_cdf(-k));
  }
  return bvn;
}

}  // namespace

Correlation::Correlation(double rho) : rho_(rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument("correlation must lie in [-1, 1], got " + std::to_string(rho));
  }
}

double bvn_upper(double h, double k, Correlation rho) noexcept {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (h == inf || k == inf) return 0.0;
  if (h == -inf) return k == -inf ? 1.0 : normal_cdf(-k);
  if (k == -inf) return normal_cdf(-h);
  if (rho.value() == 0.0) return normal_cdf(-h) * normal_cdf(-k);
  return std::clamp(bvnu_finite(h, k, rho.value()), 0.0, 1.0);
}

double bvn_rect(double lo1, double hi1, double lo2, double hi2, Correlation rho) {
  if (std::isnan(lo1) || std::isnan(hi1) || std::isnan(lo2) || std::isnan(hi2)) {
    throw std::invalid_argument("bvn_rect: NaN bound");
  }
  if (lo1 > hi1 || lo2 > hi2) {
    throw std::invalid_argument("bvn_rect: lower bound exceeds upper bound");
  }
  if (lo1 == hi1 || lo2 == hi2) return 0.0;

  // Reflect each axis so the box sits mostly in the upper half-line; the
  // upper-orthant terms are then tail probabilities and their alternating
  // sum keeps absolute accuracy.
  double r = rho.value();
  if (lo1 + hi1 < 0.0) {
    std::swap(lo1, hi1);
    lo1 = -lo1;
    hi1 = -hi1;
    r = -r;
  }
  if (lo2 + hi2 < 0.0) {
    std::swap(lo2, hi2);
    lo2 = -lo2;
    hi2 = -hi2;
    r = -r;
  }
  const Correlation c(r);
  const double p = bvn_upper(lo1, lo2, c) - bvn_upper(hi1, lo2, c) - bvn_upper(lo1, hi2, c) +
                   bvn_upper(hi1, hi2, c);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace lineint::specfun
