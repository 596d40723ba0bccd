#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lineint/double_integral.hpp"
#include "lineint/kernel.hpp"
#include "lineint/quadrature.hpp"

namespace lineint::bench {

/// SplitMix64 used as a counter-based generator: output k of a stream is
/// mix(key + (k + 1) * golden_gamma), so any draw can be addressed directly.
/// With key = seed the sequence equals the classic sequential SplitMix64.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static std::uint64_t mix(std::uint64_t z) noexcept;
  /// Key of the substream for one pair of one set.
  static std::uint64_t stream_key(std::uint64_t seed, int set_id, std::uint64_t pair_index) noexcept;

  std::uint64_t at(std::uint64_t counter) const noexcept;
  /// Uniform on the open interval (0, 1) from the top 53 bits of at(counter).
  double unit_at(std::uint64_t counter) const noexcept;
  /// lo + (hi - lo) * unit_at(counter)
  double uniform_at(std::uint64_t counter, double lo, double hi) const noexcept;

 private:
  std::uint64_t key_;
};

struct SetSpec {
  int set_id = 1;
  int n_pairs = 1000;
  int dim = 6;
  std::uint64_t seed = 42;

  SetSpec() = default;
  /// Throws std::invalid_argument unless 1 <= set_id <= 8, n_pairs >= 1, dim >= 1.
  SetSpec(int set_id_in, int n_pairs_in, int dim_in, std::uint64_t seed_in);
};

/// One generated pair. Line i starts at u and line j at the origin, so
/// p_i - p_j = u.
struct PairSample {
  int set_id;
  int pair_index;
  Vector u;
  Vector w_i;
  Vector w_j;
  ScalingMatrix v;

  Line line_i() const { return Line(u, w_i); }
  Line line_j() const { return Line(Vector::Zero(u.size()), w_j); }
};

/// Pair k of a set depends only on (seed, set_id, k, dim), not on n_pairs.
PairSample generate_pair(const SetSpec& spec, int pair_index);
std::vector<PairSample> generate_set(const SetSpec& spec);

/// Reference value ||w_i|| ||w_j|| * oracle_2d of the kernel evaluated from
/// the vectors directly (no coefficient expansion).
IntegralResult oracle_value(const PairSample& pair, Tolerance tol = Tolerance::oracle_default());

struct OracleEntry {
  int set_id;
  int pair_index;
  double value;
  double abs_error;
  int evaluations;
  QuadStatus status;
};

struct BenchRecord {
  int set_id;
  int pair_index;
  std::string method;
  double value;
  double signed_error;  ///< value - oracle
  double elapsed_s;     ///< median over timed repeats
  QuadStatus status;    ///< status reported by the method itself
  bool oracle_ok;       ///< false when the pair's oracle hit its depth cap
};

struct BenchResult {
  std::vector<BenchRecord> records;
  std::vector<OracleEntry> oracles;

  int depth_capped() const noexcept;
};

struct RunOptions {
  int repeats = 11;
  /// Skip the timing loop and record elapsed_s from the single evaluation.
  bool time_methods = true;
  Tolerance oracle_tol = Tolerance::oracle_default();
};

/// For every pair: oracle once, then each method evaluated once untimed and
/// `repeats` times timed (median kept). Runs on the calling thread.
BenchResult run_benchmark(const std::vector<SetSpec>& specs,
                          const std::vector<MethodChoice>& methods,
                          const DegeneracyPolicy& policy, const RunOptions& options = {});

struct SummaryRow {
  int set_id;
  std::string method;
  int n_pairs;     ///< pairs entering the error statistics
  int n_excluded;  ///< pairs dropped because the oracle hit its cap
  double mean_abs_error;
  double max_abs_error;
  double mean_time_s;
};

struct MethodTime {
  std::string method;
  double grand_mean_time_s;  ///< mean over sets of the per-set mean time
};

struct Summary {
  std::vector<SummaryRow> rows;
  std::vector<MethodTime> method_times;
};

/// Throws std::invalid_argument on empty input.
Summary summarize(const std::vector<BenchRecord>& records);

void write_summary_csv(std::ostream& out, const Summary& summary);
void write_summary_text(std::ostream& out, const Summary& summary);
void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records);

/// log10 |error| histogram. Exact zeros go to the underflow bin; the
/// remaining magnitudes are split into n_bins equal-width bins spanning
/// their observed range (a single distinct value gets a unit-wide range).
struct Histogram {
  std::vector<double> edges;  ///< n_bins + 1 edges in log10 units
  std::vector<int> counts;    ///< n_bins counts
  int underflow = 0;
};

/// Throws std::invalid_argument if no record matches or n_bins < 1.
Histogram histogram(const std::vector<BenchRecord>& records, int set_id,
                    const std::string& method, int n_bins);

/// Columns bin_lo_log10, bin_hi_log10, count; the underflow bin comes first
/// as -inf,-inf.
void write_histogram_csv(std::ostream& out, const Histogram& hist);

/// Best-effort pinning of the calling thread to the CPU it runs on.
bool pin_current_thread() noexcept;

}  // namespace lineint::bench
