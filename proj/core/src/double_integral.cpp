#include "lineint/double_integral.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "lineint/specfun.hpp"

namespace lineint {

namespace {
constexpr double kSqrtPi = 1.772453850905516027298167483341145;
}

DegeneracyPolicy::DegeneracyPolicy(double eps_w_value, double eps_det_value)
    : eps_w(eps_w_value), eps_det(eps_det_value) {
  auto check = [](double eps, const char* name) {
    if (!(eps > 0.0 && eps <= 1e-6)) {
      throw std::invalid_argument(std::string(name) + " must lie in (0, 1e-6]");
    }
  };
  check(eps_w, "eps_w");
  check(eps_det, "eps_det");
}

MethodChoice MethodChoice::simpson(int p) {
  if (p < 1) throw std::invalid_argument("simpson method needs p >= 1");
  return MethodChoice(Kind::kSimpson, p);
}

MethodChoice MethodChoice::parse(std::string_view label) {
  if (label == "proposed") return proposed();
  if (label == "bivariate") return bivariate();
  constexpr std::string_view kPrefix = "simpson";
  if (label.starts_with(kPrefix)) {
    const std::string_view digits = label.substr(kPrefix.size());
    int p = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty()) {
      return simpson(p);
    }
  }
  throw std::invalid_argument("unknown method '" + std::string(label) + "'");
}

std::string MethodChoice::label() const {
  switch (kind_) {
    case Kind::kProposed: return "proposed";
    case Kind::kBivariate: return "bivariate";
    case Kind::kSimpson: return "simpson" + std::to_string(p_);
  }
  return "?";
}

double gamma_integrand(double s, const QuadCoeffs& q) noexcept {
  const double lin = q.c - q.d * s;
  const double exponent = 0.5 * (q.b * s - q.a - q.f * s * s + lin * lin / (4.0 * q.e));
  const double scale = 2.0 * std::sqrt(2.0 * q.e);
  const double gamma2 = specfun::erf_difference((lin + 2.0 * q.e) / scale, lin / scale);
  return std::exp(exponent) * gamma2;
}

namespace {

IntegralResult closed_form(double value) {
  IntegralResult r;
  r.value = value;
  r.abs_error = 0.0;
  r.evaluations = 1;
  r.level = RuleLevel::kClosedForm;
  return r;
}

// Antiderivatives of x erf(x) and x^2 erf(x).
double erf_moment1(double x) {
  return (0.5 * x * x - 0.25) * specfun::erf(x) +
         x * std::exp(-x * x) / (2.0 * kSqrtPi);
}

double erf_moment2(double x) {
  return x * x * x / 3.0 * specfun::erf(x) +
         (x * x + 1.0) * std::exp(-x * x) / (3.0 * kSqrtPi);
}

struct Moments {
  double h0 = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
};

// J_k = int_0^1 s^k erf(q (c0 - beta s)) ds, via x = q (c0 - beta s).
// Limits are kept signed so that beta < 0 needs no special treatment.
Moments erf_line_moments(double q, double beta, double c0, bool with_corrections) {
  const double x0 = q * c0;
  const double x1 = q * (c0 - beta);
  const double r = q * beta;
  const double e0 = specfun::erf_interval_integral(x1, x0);
  Moments m;
  m.h0 = e0 / r;
  if (with_corrections) {
    const double e1 = erf_moment1(x0) - erf_moment1(x1);
    const double e2 = erf_moment2(x0) - erf_moment2(x1);
    m.h1 = (x0 * e0 - e1) / (r * r);
    m.h2 = (x0 * x0 * e0 - 2.0 * x0 * e1 + e2) / (r * r * r);
  }
  return m;
}

// H_k = int_0^1 s^k int_0^1 exp(-a (t + kappa - beta s)^2 / 2) dt ds.
Moments colinear_moments(double a, double beta, double kappa, bool with_corrections) {
  const double q = std::sqrt(0.5 * a);
  const double pre = kSqrtPi / (2.0 * q);
  const Moments upper = erf_line_moments(q, beta, 1.0 + kappa, with_corrections);
  const Moments lower = erf_line_moments(q, beta, kappa, with_corrections);
  return {pre * (upper.h0 - lower.h0), pre * (upper.h1 - lower.h1),
          pre * (upper.h2 - lower.h2)};
}

// Unscaled unit-square integral for near-proportional spans. Writing
//   f(t, s) = a (t + kappa - beta s)^2 + g0 + g1 s + g2 s^2
// the colinear part is exact and exp(-(g1 s + g2 s^2)/2) is expanded to
// second order in g1 and first order in g2.
double near_colinear(Vector u, const Vector* w_i, const Vector* w_j, const ScalingMatrix& v) {
  double a = v.quad_form(*w_i);
  double cross = v.bilinear(*w_i, *w_j);
  if (std::fabs(cross) < a) {
    // Integrate analytically along the longer line so that |beta| >= 1.
    std::swap(w_i, w_j);
    u = -u;
    a = v.quad_form(*w_i);
  }
  const Vector vw_i = v.apply(*w_i);
  const double beta = w_j->dot(vw_i) / a;
  const double kappa = u.dot(vw_i) / a;
  const Vector residual = u - kappa * *w_i;
  const Vector delta = *w_j - beta * *w_i;
  const double g0 = v.quad_form(residual);
  const double g1 = -2.0 * v.bilinear(residual, delta);
  const double g2 = v.quad_form(delta);

  const bool corrections = g1 != 0.0 || g2 != 0.0;
  const Moments h = colinear_moments(a, beta, kappa, corrections);
  double inner = h.h0;
  if (corrections) inner += -0.5 * g1 * h.h1 + (0.125 * g1 * g1 - 0.5 * g2) * h.h2;
  return std::exp(-0.5 * g0) * inner;
}

}  // namespace

double colinear_closed_form(double a, double beta, double f_bar, double d) {
  if (!(a > 0.0)) throw std::invalid_argument("colinear_closed_form: a must be positive");
  if (beta == 0.0) throw std::invalid_argument("colinear_closed_form: beta must be nonzero");
  const double kappa = -d / a;
  const double f_tilde = f_bar - d * d / a;
  return std::exp(-0.5 * f_tilde) * colinear_moments(a, beta, kappa, false).h0;
}

IntegralResult proposed_double_integral(const Line& line_i, const Line& line_j,
                                        const ScalingMatrix& v,
                                        const DegeneracyPolicy& policy) {
  detail::require_dim("proposed line_i", line_i.dim(), v.dim());
  detail::require_dim("proposed line_j", line_j.dim(), v.dim());
  const Vector u = line_i.start - line_j.start;
  const double lengths = line_i.length() * line_j.length();

  if (v.apply(line_i.span).norm() < policy.eps_w && v.apply(line_j.span).norm() < policy.eps_w) {
    return closed_form(lengths * std::exp(-0.5 * v.quad_form(u)));
  }

  const QuadCoeffs q = quad_coeffs(u, line_i.span, line_j.span, v);
  IntegralResult r = qng_1d([&q](double s) { return gamma_integrand(s, q); }, 0.0, 1.0,
                            Tolerance::sqrt_epsilon());
  const double scale = lengths * std::sqrt(std::numbers::pi / (2.0 * q.e));
  r.value *= scale;
  r.abs_error *= scale;
  return r;
}

IntegralResult bivariate_double_integral(const Line& line_i, const Line& line_j,
                                         const ScalingMatrix& v,
                                         const DegeneracyPolicy& policy) {
  detail::require_dim("bivariate line_i", line_i.dim(), v.dim());
  detail::require_dim("bivariate line_j", line_j.dim(), v.dim());
  const Vector u = line_i.start - line_j.start;
  const Vector& w_i = line_i.span;
  const Vector& w_j = line_j.span;
  const double len_i = line_i.length();
  const double len_j = line_j.length();
  const double norm_vw_i = v.apply(w_i).norm();
  const double norm_vw_j = v.apply(w_j).norm();

  if (norm_vw_i < policy.eps_w && norm_vw_j < policy.eps_w) {
    const Vector gap = line_i.midpoint() - line_j.midpoint();
    return closed_form(len_i * len_j * std::exp(-0.5 * v.quad_form(gap)));
  }

  const double a = v.quad_form(w_i);
  const double b = -v.bilinear(w_i, w_j);
  const double c = v.quad_form(w_j);
  const double d = -v.bilinear(u, w_i);
  const double e = v.bilinear(u, w_j);
  const double f_bar = v.quad_form(u);
  const double ac = a * c;
  const double det = ac - b * b;

  if (det <= 0.0 || std::fabs(det) < policy.eps_det * std::max(ac, 1.0)) {
    if (norm_vw_i < policy.eps_w) {
      return closed_form(len_i * single_line_integral(line_j, line_i.midpoint(), v, policy.eps_w));
    }
    if (norm_vw_j < policy.eps_w) {
      return closed_form(len_j * single_line_integral(line_i, line_j.midpoint(), v, policy.eps_w));
    }
    if (det <= policy.eps_det * ac) {
      return closed_form(len_i * len_j * near_colinear(u, &w_i, &w_j, v));
    }
    // Both spans are short in absolute terms but not proportional.
    if (norm_vw_i <= norm_vw_j) {
      return closed_form(len_i * single_line_integral(line_j, line_i.midpoint(), v, policy.eps_w));
    }
    return closed_form(len_j * single_line_integral(line_i, line_j.midpoint(), v, policy.eps_w));
  }

  // Density exp(-((x - mu)^T A (x - mu) + h) / 2) with A = [[a, b], [b, c]].
  const double s11 = c / det;
  const double s22 = a / det;
  const double s12 = -b / det;
  const double mu1 = s11 * d + s12 * e;
  const double mu2 = s12 * d + s22 * e;
  const double h = f_bar - (d * mu1 + e * mu2);
  const double rho = std::clamp(-b / std::sqrt(ac), -1.0, 1.0);
  const double sd1 = std::sqrt(s11);
  const double sd2 = std::sqrt(s22);
  const double prob = specfun::bvn_rect(-mu1 / sd1, (1.0 - mu1) / sd1, -mu2 / sd2,
                                        (1.0 - mu2) / sd2, specfun::Correlation(rho));
  if (prob == 0.0) return closed_form(0.0);
  const double log_value =
      std::log(2.0 * std::numbers::pi) - 0.5 * h - 0.5 * std::log(det) + std::log(prob);
  return closed_form(len_i * len_j * std::exp(log_value));
}

IntegralResult simpson_double_integral(const Line& line_i, const Line& line_j,
                                       const ScalingMatrix& v, int p) {
  detail::require_dim("simpson line_i", line_i.dim(), v.dim());
  detail::require_dim("simpson line_j", line_j.dim(), v.dim());
  const Vector u = line_i.start - line_j.start;
  const QuadCoeffs q = quad_coeffs(u, line_i.span, line_j.span, v);
  // The swapped expansion is the same integrand with s and t exchanged,
  // which leaves the tensor rule on the unit square unchanged.
  const double value =
      simpson_2d([&q](double t, double s) { return std::exp(-0.5 * q.exponent(s, t)); }, p);
  IntegralResult r;
  r.value = line_i.length() * line_j.length() * value;
  r.abs_error = 0.0;
  r.evaluations = (2 * p + 1) * (2 * p + 1);
  r.level = RuleLevel::kComposite;
  return r;
}

IntegralResult evaluate(const Line& line_i, const Line& line_j, const ScalingMatrix& v,
                        const MethodChoice& method, const DegeneracyPolicy& policy) {
  switch (method.kind()) {
    case MethodChoice::Kind::kProposed:
      return proposed_double_integral(line_i, line_j, v, policy);
    case MethodChoice::Kind::kBivariate:
      return bivariate_double_integral(line_i, line_j, v, policy);
    case MethodChoice::Kind::kSimpson:
      return simpson_double_integral(line_i, line_j, v, method.simpson_p());
  }
  throw std::logic_error("unhandled method");
}

}  // namespace lineint
