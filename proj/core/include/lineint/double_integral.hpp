#pragma once

#include <string>
#include <string_view>

#include "lineint/kernel.hpp"
#include "lineint/quadrature.hpp"

namespace lineint {

/// Thresholds that route inputs to the degenerate branches.
struct DegeneracyPolicy {
  /// ||V w|| below this treats a line as a point.
  double eps_w = kDefaultEpsW;
  /// |ac - b^2| below eps_det * max(ac, 1) selects the bivariate colinear path.
  double eps_det = 1e-10;

  DegeneracyPolicy() = default;
  /// Throws std::invalid_argument unless 0 < eps <= 1e-6 for both.
  DegeneracyPolicy(double eps_w_value, double eps_det_value);
};

class MethodChoice {
 public:
  enum class Kind { kProposed, kBivariate, kSimpson };

  static MethodChoice proposed() noexcept { return MethodChoice(Kind::kProposed, 0); }
  static MethodChoice bivariate() noexcept { return MethodChoice(Kind::kBivariate, 0); }
  /// Throws std::invalid_argument if p < 1.
  static MethodChoice simpson(int p);

  /// Accepts "proposed", "bivariate" and "simpson<p>" (e.g. "simpson200").
  static MethodChoice parse(std::string_view label);

  Kind kind() const noexcept { return kind_; }
  /// Subintervals per axis; 0 unless kind() == kSimpson.
  int simpson_p() const noexcept { return p_; }
  std::string label() const;

  friend bool operator==(const MethodChoice&, const MethodChoice&) = default;

 private:
  MethodChoice(Kind kind, int p) noexcept : kind_(kind), p_(p) {}
  Kind kind_;
  int p_;
};

/// Gamma1(s) * Gamma2(s): the integrand left after integrating the t
/// direction analytically. Requires coeffs.e > 0.
double gamma_integrand(double s, const QuadCoeffs& coeffs) noexcept;

/// Double line integral
///   ||w_i|| ||w_j|| int_0^1 int_0^1 k(p_i + t w_i, p_j + s w_j) dt ds
/// by the erf reduction: one direction in closed form, the other with
/// qng_1d at sqrt(machine epsilon). A tolerance miss is reported through
/// the result status; the value is still the 87-point estimate.
IntegralResult proposed_double_integral(const Line& line_i, const Line& line_j,
                                        const ScalingMatrix& v,
                                        const DegeneracyPolicy& policy = {});

/// Same integral through the bivariate normal rectangle probability, with
/// the near-singular configurations handled separately:
///  - both spans below eps_w: the two lines collapse to their midpoints;
///  - (nearly) proportional spans: closed form for colinear lines, plus a
///    second-order correction in the residual non-colinear part;
///  - spans that are only absolutely small: the shorter line collapses to
///    its midpoint and the single-line integral is used.
IntegralResult bivariate_double_integral(const Line& line_i, const Line& line_j,
                                         const ScalingMatrix& v,
                                         const DegeneracyPolicy& policy = {});

/// Unit-square integral of exp(-f/2) for exactly colinear spans,
/// f(t, s) = a t^2 - 2 a beta t s + a beta^2 s^2 - 2 d t + 2 beta d s + f_bar,
/// i.e. w_j = beta w_i, a = w_i^T V w_i, d = -u^T V w_i, f_bar = u^T V u.
/// Not scaled by the line lengths. Throws std::invalid_argument if a <= 0
/// or beta == 0.
double colinear_closed_form(double a, double beta, double f_bar, double d);

/// ||w_i|| ||w_j|| times the composite Simpson rule with p subintervals.
IntegralResult simpson_double_integral(const Line& line_i, const Line& line_j,
                                       const ScalingMatrix& v, int p);

/// Dispatch on method. Deterministic: identical inputs give identical bits.
IntegralResult evaluate(const Line& line_i, const Line& line_j, const ScalingMatrix& v,
                        const MethodChoice& method, const DegeneracyPolicy& policy = {});

}  // namespace lineint
