#include "lineint/kernel.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "lineint/specfun.hpp"

namespace lineint {

namespace detail {

void require_dim(const char* what, Eigen::Index got, int expected) {
  if (got != expected) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(expected) + ", got " + std::to_string(got));
  }
}

}  // namespace detail

ScalingMatrix::ScalingMatrix(Matrix v) : v_(std::move(v)) {
  if (v_.rows() == 0 || v_.rows() != v_.cols()) {
    throw std::invalid_argument("scaling matrix must be square and non-empty");
  }
  if (!v_.allFinite()) {
    throw std::invalid_argument("scaling matrix has non-finite entries");
  }
  if (v_ != v_.transpose()) {
    throw std::invalid_argument("scaling matrix must be symmetric");
  }
  Eigen::LLT<Matrix> llt(v_);
  if (llt.info() != Eigen::Success) {
    throw std::invalid_argument("scaling matrix must be positive definite");
  }
  chol_ = llt.matrixL();
  if ((chol_.diagonal().array() <= 0.0).any()) {
    throw std::invalid_argument("scaling matrix must be positive definite");
  }
}

ScalingMatrix ScalingMatrix::identity(int dim) {
  return ScalingMatrix(Matrix::Identity(dim, dim));
}

ScalingMatrix ScalingMatrix::diagonal(const Vector& diag) {
  return ScalingMatrix(Matrix(diag.asDiagonal()));
}

double ScalingMatrix::quad_form(const Vector& x) const {
  detail::require_dim("quad_form", x.size(), dim());
  return x.dot(v_ * x);
}

double ScalingMatrix::bilinear(const Vector& x, const Vector& y) const {
  detail::require_dim("bilinear", x.size(), dim());
  detail::require_dim("bilinear", y.size(), dim());
  return x.dot(v_ * y);
}

Vector ScalingMatrix::apply(const Vector& x) const {
  detail::require_dim("apply", x.size(), dim());
  return v_ * x;
}

Line::Line(Vector start_point, Vector span_vector)
    : start(std::move(start_point)), span(std::move(span_vector)) {
  if (start.size() == 0) {
    throw std::invalid_argument("line must have positive dimension");
  }
  detail::require_dim("line span", span.size(), static_cast<int>(start.size()));
  if (!start.allFinite() || !span.allFinite()) {
    throw std::invalid_argument("line has non-finite coordinates");
  }
}

double se_kernel(const Vector& z, const Vector& z_prime, const ScalingMatrix& v) {
  detail::require_dim("se_kernel z", z.size(), v.dim());
  detail::require_dim("se_kernel z'", z_prime.size(), v.dim());
  const Vector diff = z - z_prime;
  return std::exp(-0.5 * v.quad_form(diff));
}

double single_line_integral(const Line& line, const Vector& z_star, const ScalingMatrix& v,
                            double eps_w) {
  detail::require_dim("single_line_integral line", line.dim(), v.dim());
  detail::require_dim("single_line_integral z*", z_star.size(), v.dim());

  const Vector offset = line.start - z_star;
  const Vector vw = v.apply(line.span);
  const double c3 = v.quad_form(offset);
  if (vw.norm() < eps_w) {
    return line.length() * std::exp(-0.5 * c3);
  }
  const double c1 = line.span.dot(vw);
  const double c2 = 2.0 * offset.dot(vw);

  const double root = std::sqrt(2.0 * c1);
  // c2^2/(8 c1) - c3/2 is minus half the minimum of the quadratic over the
  // whole line, hence <= 0; it is kept as one exponent.
  const double exponent = c2 * c2 / (8.0 * c1) - 0.5 * c3;
  const double erf_diff =
      specfun::erf_difference((2.0 * c1 + c2) / (2.0 * root), c2 / (2.0 * root));
  return line.length() * std::sqrt(std::numbers::pi / (2.0 * c1)) * std::exp(exponent) * erf_diff;
}

QuadCoeffs quad_coeffs(const Vector& u, const Vector& w_i, const Vector& w_j,
                       const ScalingMatrix& v) {
  detail::require_dim("quad_coeffs u", u.size(), v.dim());
  detail::require_dim("quad_coeffs w_i", w_i.size(), v.dim());
  detail::require_dim("quad_coeffs w_j", w_j.size(), v.dim());

  const Vector vw_i = v.apply(w_i);
  const Vector vw_j = v.apply(w_j);
  const Vector vu = v.apply(u);

  QuadCoeffs q;
  q.a = u.dot(vu);
  if (vw_i.norm() < vw_j.norm()) {
    q.b = -2.0 * u.dot(vw_i);
    q.c = -2.0 * u.dot(vw_j);
    q.d = 2.0 * w_i.dot(vw_j);
    q.e = w_j.dot(vw_j);
    q.f = w_i.dot(vw_i);
    q.swapped = true;
  } else {
    q.b = 2.0 * u.dot(vw_j);
    q.c = 2.0 * u.dot(vw_i);
    q.d = 2.0 * w_j.dot(vw_i);
    q.e = w_i.dot(vw_i);
    q.f = w_j.dot(vw_j);
  }
  return q;
}

}  // namespace lineint
