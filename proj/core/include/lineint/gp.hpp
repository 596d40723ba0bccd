#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lineint/double_integral.hpp"
#include "lineint/kernel.hpp"

namespace lineint {

/// n line-integral observations y_k of a zero-mean GP with unit amplitude.
struct LineDataset {
  std::vector<Line> lines;
  Vector y;
  double noise_std = 0.0;

  LineDataset() = default;
  /// Throws std::invalid_argument on count mismatch, mixed dimensions,
  /// negative or non-finite noise_std, or non-finite observations.
  LineDataset(std::vector<Line> lines_in, Vector y_in, double noise_std_in);

  int size() const noexcept { return static_cast<int>(lines.size()); }
  int dim() const noexcept { return lines.empty() ? 0 : lines.front().dim(); }
};

struct Posterior {
  Vector mean;
  Vector variance;
};

class NotPositiveDefinite : public std::runtime_error {
 public:
  NotPositiveDefinite(const std::string& what, std::vector<double> attempted)
      : std::runtime_error(what), attempted_jitter(std::move(attempted)) {}

  /// Absolute diagonal additions that were tried, in order.
  std::vector<double> attempted_jitter;
};

/// Failure while evaluating one covariance entry.
class CovarianceEntryError : public std::runtime_error {
 public:
  CovarianceEntryError(int row, int col, const std::string& cause);
  int row;
  int col;
};

/// Relative diagonal jitter ladder, multiplied by the mean diagonal.
inline constexpr double kJitterLadder[] = {0.0, 1e-12, 1e-10, 1e-8};

/// n x n line-line covariance (noise not included). The upper triangle is
/// evaluated and mirrored, so the result is exactly symmetric.
Matrix build_covariance(const LineDataset& data, const ScalingMatrix& v,
                        const MethodChoice& method, const DegeneracyPolicy& policy = {});

/// n x n* covariance between the observations and the latent function at
/// the test points.
Matrix cross_covariance(const LineDataset& data, const std::vector<Vector>& test_points,
                        const ScalingMatrix& v, double eps_w = kDefaultEpsW);

/// Posterior mean and variance at the test points, via a Cholesky solve of
/// K + noise_std^2 I with the jitter ladder. Throws NotPositiveDefinite if
/// every rung fails.
Posterior gp_predict(const LineDataset& data, const std::vector<Vector>& test_points,
                     const ScalingMatrix& v, const MethodChoice& method,
                     const DegeneracyPolicy& policy = {});

/// Text format:
///   lines starting with '#' and blank lines are ignored;
///   the first remaining row is "m,sigma_n";
///   every further row is p_0..p_{m-1}, w_0..w_{m-1}, y (2m + 1 values).
/// Throws std::runtime_error with the offending line number on bad input.
LineDataset read_dataset(std::istream& in);
LineDataset read_dataset_file(const std::string& path);
/// Writes the same format with round-trip precision.
void write_dataset(std::ostream& out, const LineDataset& data);

}  // namespace lineint
