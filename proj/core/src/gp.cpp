#include "lineint/gp.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Cholesky>

namespace lineint {

LineDataset::LineDataset(std::vector<Line> lines_in, Vector y_in, double noise_std_in)
    : lines(std::move(lines_in)), y(std::move(y_in)), noise_std(noise_std_in) {
  if (static_cast<Eigen::Index>(lines.size()) != y.size()) {
    throw std::invalid_argument("dataset: line count does not match observation count");
  }
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
    throw std::invalid_argument("dataset: noise_std must be finite and >= 0");
  }
  if (!y.allFinite()) throw std::invalid_argument("dataset: non-finite observation");
  for (const Line& line : lines) {
    detail::require_dim("dataset line", line.dim(), dim());
  }
}

CovarianceEntryError::CovarianceEntryError(int r, int c, const std::string& cause)
    : std::runtime_error("covariance entry (" + std::to_string(r) + ", " + std::to_string(c) +
                         "): " + cause),
      row(r),
      col(c) {}

Matrix build_covariance(const LineDataset& data, const ScalingMatrix& v,
                        const MethodChoice& method, const DegeneracyPolicy& policy) {
  const int n = data.size();
  Matrix k(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      try {
        k(i, j) = evaluate(data.lines[i], data.lines[j], v, method, policy).value;
      } catch (const std::exception& ex) {
        throw CovarianceEntryError(i, j, ex.what());
      }
      k(j, i) = k(i, j);
    }
  }
  return k;
}

Matrix cross_covariance(const LineDataset& data, const std::vector<Vector>& test_points,
                        const ScalingMatrix& v, double eps_w) {
  Matrix k(data.size(), static_cast<Eigen::Index>(test_points.size()));
  for (int i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < test_points.size(); ++j) {
      k(i, static_cast<Eigen::Index>(j)) =
          single_line_integral(data.lines[i], test_points[j], v, eps_w);
    }
  }
  return k;
}

Posterior gp_predict(const LineDataset& data, const std::vector<Vector>& test_points,
                     const ScalingMatrix& v, const MethodChoice& method,
                     const DegeneracyPolicy& policy) {
  if (data.size() < 1) throw std::invalid_argument("gp_predict: empty dataset");
  for (const Vector& z : test_points) detail::require_dim("gp_predict test point", z.size(), v.dim());

  Matrix k = build_covariance(data, v, method, policy);
  k.diagonal().array() += data.noise_std * data.noise_std;

  double scale = k.diagonal().mean();
  if (!(scale > 0.0)) scale = 1.0;

  std::vector<double> attempted;
  Eigen::LLT<Matrix> llt;
  bool ok = false;
  for (double rung : kJitterLadder) {
    const double jitter = rung * scale;
    attempted.push_back(jitter);
    Matrix kj = k;
    kj.diagonal().array() += jitter;
    llt.compute(kj);
    if (llt.info() == Eigen::Success && (llt.matrixLLT().diagonal().array() > 0.0).all()) {
      ok = true;
      break;
    }
  }
  if (!ok) {
    std::ostringstream msg;
    msg << "covariance not positive definite after jitter ladder:";
    for (double j : attempted) msg << ' ' << j;
    throw NotPositiveDefinite(msg.str(), attempted);
  }

  const Matrix ks = cross_covariance(data, test_points, v, policy.eps_w);
  Posterior post;
  post.mean = ks.transpose() * llt.solve(data.y);
  const Matrix half = llt.matrixL().solve(ks);
  post.variance = Vector::Ones(ks.cols()) - half.colwise().squaredNorm().transpose();
  for (Eigen::Index j = 0; j < post.variance.size(); ++j) {
    if (post.variance(j) < -1e-10) {
      throw std::runtime_error("gp_predict: posterior variance " +
                               std::to_string(post.variance(j)) + " at test point " +
                               std::to_string(j));
    }
    post.variance(j) = std::max(post.variance(j), 0.0);
  }
  return post;
}

}  // namespace lineint
