#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace lineint {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Threshold on ||V w|| below which a line span is treated as a point.
inline constexpr double kDefaultEpsW = 1e-12;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Symmetric positive-definite scaling matrix V of the squared-exponential
/// kernel, in inverse-squared-length units. Immutable after construction.
class ScalingMatrix {
 public:
  /// Throws std::invalid_argument if v is empty, not square, not exactly
  /// symmetric, has non-finite entries, or is not positive definite.
  explicit ScalingMatrix(Matrix v);

  static ScalingMatrix identity(int dim);
  static ScalingMatrix diagonal(const Vector& diag);

  int dim() const noexcept { return static_cast<int>(v_.rows()); }
  const Matrix& matrix() const noexcept { return v_; }

  /// Lower Cholesky factor computed during validation.
  const Matrix& cholesky_factor() const noexcept { return chol_; }

  /// x^T V x
  double quad_form(const Vector& x) const;
  /// x^T V y
  double bilinear(const Vector& x, const Vector& y) const;
  /// V x
  Vector apply(const Vector& x) const;

 private:
  Matrix v_;
  Matrix chol_;
};

/// Straight measurement segment {start + s * span : s in [0, 1]}. A zero
/// span is a point measurement.
struct Line {
  Vector start;
  Vector span;

  Line(Vector start_point, Vector span_vector);

  int dim() const noexcept { return static_cast<int>(start.size()); }
  double length() const { return span.norm(); }
  Vector end() const { return start + span; }
  Vector midpoint() const { return start + 0.5 * span; }
};

/// Coefficients of the expanded exponent
///   a - b s + c t - d s t + e t^2 + f s^2
/// of the double line integral. `swapped` records that the roles of the two
/// lines were exchanged so that the analytically integrated line is the one
/// with the larger ||V w||.
struct QuadCoeffs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double e = 0.0;
  double f = 0.0;
  bool swapped = false;

  /// a - b s + c t - d s t + e t^2 + f s^2
  double exponent(double s, double t) const noexcept {
    return a - b * s + c * t - d * s * t + e * t * t + f * s * s;
  }
};

/// exp(-0.5 (z - z')^T V (z - z'))
double se_kernel(const Vector& z, const Vector& z_prime, const ScalingMatrix& v);

/// Covariance between a line observation and the latent function at z_star:
///   ||w|| * integral_0^1 k(p + w t, z_star) dt
/// in closed form. When ||V w|| < eps_w the line is collapsed to its start
/// point, giving ||w|| k(p, z_star) (exactly 0 for a zero span).
double single_line_integral(const Line& line, const Vector& z_star, const ScalingMatrix& v,
                            double eps_w = kDefaultEpsW);

/// Expands (u - s w_j + t w_i)^T V (u - s w_j + t w_i) with u = p_i - p_j.
/// If ||V w_i|| < ||V w_j|| the lines are exchanged (u -> -u) and
/// `swapped` is set; ties do not swap.
QuadCoeffs quad_coeffs(const Vector& u, const Vector& w_i, const Vector& w_j,
                       const ScalingMatrix& v);

namespace detail {
void require_dim(const char* what, Eigen::Index got, int expected);
}

}  // namespace lineint
