#include "lineint/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

#ifdef __linux__
#include <sched.h>
#endif

namespace lineint::bench {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t CounterRng::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t CounterRng::stream_key(std::uint64_t seed, int set_id,
                                     std::uint64_t pair_index) noexcept {
  const std::uint64_t set_key = mix(seed ^ (static_cast<std::uint64_t>(set_id) * 0xA0761D6478BD642FULL));
  return mix(set_key + (pair_index + 1) * 0xE7037ED1A0B428DBULL);
}

std::uint64_t CounterRng::at(std::uint64_t counter) const noexcept {
  return mix(key_ + (counter + 1) * kGoldenGamma);
}

double CounterRng::unit_at(std::uint64_t counter) const noexcept {
  return (static_cast<double>(at(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::uniform_at(std::uint64_t counter, double lo, double hi) const noexcept {
  return lo + (hi - lo) * unit_at(counter);
}

SetSpec::SetSpec(int set_id_in, int n_pairs_in, int dim_in, std::uint64_t seed_in)
    : set_id(set_id_in), n_pairs(n_pairs_in), dim(dim_in), seed(seed_in) {
  if (set_id < 1 || set_id > 8) {
    throw std::invalid_argument("set_id must be in 1..8, got " + std::to_string(set_id));
  }
  if (n_pairs < 1) throw std::invalid_argument("n_pairs must be >= 1");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
}

namespace {

struct SetDistribution {
  double v_hi;  // 0 means V = I
  double wi_hi;
  double wj_hi;
  double u_hi;
};

SetDistribution distribution(int set_id) {
  switch (set_id) {
    case 1: return {0.0, 1.0, 1.0, 1.0};
    case 2: return {0.0, 1.0, 1e-8, 1.0};  // w_j is w_i plus this perturbation
    case 3: return {1.0, 1.0, 1.0, 1.0};
    case 4: return {0.0, 0.0, 1.0, 1.0};
    case 5: return {0.01, 10.0, 10.0, 10.0};
    case 6: return {10.0, 10.0, 10.0, 10.0};
    case 7: return {0.0, 1e-8, 1.0, 1.0};
    case 8: return {0.0, 1e-8, 1e-8, 1.0};
  }
  throw std::invalid_argument("set_id must be in 1..8");
}

}  // namespace

PairSample generate_pair(const SetSpec& spec, int pair_index) {
  if (pair_index < 0) throw std::invalid_argument("pair_index must be >= 0");
  const SetDistribution dist = distribution(spec.set_id);
  const CounterRng rng(CounterRng::stream_key(spec.seed, spec.set_id,
                                              static_cast<std::uint64_t>(pair_index)));
  const int m = spec.dim;
  // Fixed counter blocks: V diagonal, w_i, w_j, u.
  auto block = [&](int slot, double hi) {
    Vector out(m);
    for (int k = 0; k < m; ++k) {
      out(k) = rng.uniform_at(static_cast<std::uint64_t>(slot * m + k), 0.0, hi);
    }
    return out;
  };

  Vector w_i = dist.wi_hi > 0.0 ? block(1, dist.wi_hi) : Vector::Zero(m);
  Vector w_j = block(2, dist.wj_hi);
  if (spec.set_id == 2) w_j += w_i;
  Vector u = block(3, dist.u_hi);
  ScalingMatrix v = dist.v_hi > 0.0 ? ScalingMatrix::diagonal(block(0, dist.v_hi))
                                    : ScalingMatrix::identity(m);
  return PairSample{spec.set_id, pair_index, std::move(u), std::move(w_i), std::move(w_j),
                    std::move(v)};
}

std::vector<PairSample> generate_set(const SetSpec& spec) {
  std::vector<PairSample> out;
  out.reserve(static_cast<std::size_t>(spec.n_pairs));
  for (int k = 0; k < spec.n_pairs; ++k) out.push_back(generate_pair(spec, k));
  return out;
}

IntegralResult oracle_value(const PairSample& pair, Tolerance tol) {
  // x^T V x = |L^T x|^2 with V = L L^T.
  const Matrix lt = pair.v.cholesky_factor().transpose();
  const Vector y0 = lt * pair.u;
  const Vector yi = lt * pair.w_i;
  const Vector yj = lt * pair.w_j;
  const Eigen::Index m = y0.size();
  auto integrand = [&](double t, double s) {
    double sq = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
      const double r = y0(k) + t * yi(k) - s * yj(k);
      sq += r * r;
    }
    return std::exp(-0.5 * sq);
  };
  IntegralResult r = oracle_2d(integrand, tol);
  const double lengths = pair.w_i.norm() * pair.w_j.norm();
  r.value *= lengths;
  r.abs_error *= lengths;
  return r;
}

int BenchResult::depth_capped() const noexcept {
  return static_cast<int>(std::count_if(oracles.begin(), oracles.end(), [](const OracleEntry& o) {
    return o.status == QuadStatus::kDepthCapReached;
  }));
}

namespace {

double median(std::vector<double> xs) {
  const std::size_t mid = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid), xs.end());
  double hi = xs[mid];
  if (xs.size() % 2 == 1) return hi;
  const double lo = *std::max_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

// Keeps the optimizer from discarding timed evaluations.
volatile double g_sink = 0.0;

}  // namespace

BenchResult run_benchmark(const std::vector<SetSpec>& specs,
                          const std::vector<MethodChoice>& methods,
                          const DegeneracyPolicy& policy, const RunOptions& options) {
  if (options.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  using Clock = std::chrono::steady_clock;
  constexpr double kMinElapsed = 1e-9;

  BenchResult result;
  for (const SetSpec& spec : specs) {
    for (int k = 0; k < spec.n_pairs; ++k) {
      const PairSample pair = generate_pair(spec, k);
      const Line li = pair.line_i();
      const Line lj = pair.line_j();
      const IntegralResult oracle = oracle_value(pair, options.oracle_tol);
      result.oracles.push_back(
          {spec.set_id, k, oracle.value, oracle.abs_error, oracle.evaluations, oracle.status});
      const bool oracle_ok = oracle.status != QuadStatus::kDepthCapReached;

      for (const MethodChoice& method : methods) {
        auto start = Clock::now();
        const IntegralResult r = evaluate(li, lj, pair.v, method, policy);
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        if (options.time_methods) {
          std::vector<double> times;
          times.reserve(static_cast<std::size_t>(options.repeats));
          for (int rep = 0; rep < options.repeats; ++rep) {
            start = Clock::now();
            g_sink = evaluate(li, lj, pair.v, method, policy).value;
            times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
          }
          elapsed = median(std::move(times));
        }
        result.records.push_back({spec.set_id, k, method.label(), r.value, r.value - oracle.value,
                                  std::max(elapsed, kMinElapsed), r.status, oracle_ok});
      }
    }
  }
  return result;
}

Summary summarize(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");

  struct Acc {
    int n = 0;
    int excluded = 0;
    double sum_err = 0.0;
    double max_err = 0.0;
    int n_time = 0;
    double sum_time = 0.0;
  };
  // Ordered by set, then by first appearance of the method.
  std::vector<std::string> method_order;
  std::map<std::pair<int, std::size_t>, Acc> acc;
  for (const BenchRecord& r : records) {
    auto it = std::find(method_order.begin(), method_order.end(), r.method);
    const std::size_t mi = static_cast<std::size_t>(it - method_order.begin());
    if (it == method_order.end()) method_order.push_back(r.method);
    Acc& a = acc[{r.set_id, mi}];
    a.sum_time += r.elapsed_s;
    ++a.n_time;
    if (!r.oracle_ok) {
      ++a.excluded;
      continue;
    }
    const double e = std::fabs(r.signed_error);
    a.sum_err += e;
    a.max_err = std::max(a.max_err, e);
    ++a.n;
  }

  Summary s;
  std::vector<double> time_sums(method_order.size(), 0.0);
  std::vector<int> time_counts(method_order.size(), 0);
  for (const auto& [key, a] : acc) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double mean_time = a.sum_time / a.n_time;
    s.rows.push_back({key.first, method_order[key.second], a.n, a.excluded,
                      a.n > 0 ? a.sum_err / a.n : nan, a.n > 0 ? a.max_err : nan, mean_time});
    time_sums[key.second] += mean_time;
    ++time_counts[key.second];
  }
  for (std::size_t mi = 0; mi < method_order.size(); ++mi) {
    s.method_times.push_back({method_order[mi], time_sums[mi] / time_counts[mi]});
  }
  return s;
}

void write_summary_csv(std::ostream& out, const Summary& summary) {
  const auto old = out.precision(6);
  out << std::scientific;
  out << "set_id,method,mean_abs_error,max_abs_error,mean_time_s\n";
  for (const SummaryRow& r : summary.rows) {
    out << r.set_id << ',' << r.method << ',' << r.mean_abs_error << ',' << r.max_abs_error << ','
        << r.mean_time_s << '\n';
  }
  out << std::defaultfloat;
  out.precision(old);
}

void write_summary_text(std::ostream& out, const Summary& summary) {
  const auto old = out.precision(3);
  out << std::left << std::setw(5) << "set" << std::setw(14) << "method" << std::right
      << std::setw(8) << "pairs" << std::setw(10) << "excluded" << std::setw(14) << "mean|err|"
      << std::setw(14) << "max|err|" << std::setw(14) << "mean time s" << '\n';
  out << std::scientific;
  for (const SummaryRow& r : summary.rows) {
    out << std::left << std::setw(5) << r.set_id << std::setw(14) << r.method << std::right
        << std::setw(8) << r.n_pairs << std::setw(10) << r.n_excluded << std::setw(14)
        << r.mean_abs_error << std::setw(14) << r.max_abs_error << std::setw(14)
        << r.mean_time_s << '\n';
  }
  out << "\ngrand mean time per method (mean of per-set means):\n";
  for (const MethodTime& t : summary.method_times) {
    out << "  " << std::left << std::setw(14) << t.method << std::right << t.grand_mean_time_s
        << " s\n";
  }
  out << std::defaultfloat;
  out.precision(old);
}

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  const auto old = out.precision(17);
  out << "set_id,pair_index,method,value,signed_error,elapsed_s,status,oracle_ok\n";
  for (const BenchRecord& r : records) {
    out << r.set_id << ',' << r.pair_index << ',' << r.method << ',' << r.value << ','
        << r.signed_error << ',' << r.elapsed_s << ',' << to_string(r.status) << ','
        << (r.oracle_ok ? 1 : 0) << '\n';
  }
  out.precision(old);
}

Histogram histogram(const std::vector<BenchRecord>& records, int set_id,
                    const std::string& method, int n_bins) {
  if (n_bins < 1) throw std::invalid_argument("histogram: n_bins must be >= 1");
  Histogram h;
  std::vector<double> logs;
  bool any = false;
  for (const BenchRecord& r : records) {
    if (r.set_id != set_id || r.method != method || !r.oracle_ok) continue;
    any = true;
    const double e = std::fabs(r.signed_error);
    if (e == 0.0) {
      ++h.underflow;
    } else {
      logs.push_back(std::log10(e));
    }
  }
  if (!any) throw std::invalid_argument("histogram: no records for set/method");

  h.counts.assign(static_cast<std::size_t>(n_bins), 0);
  if (logs.empty()) {
    h.edges.assign(static_cast<std::size_t>(n_bins) + 1, 0.0);
    for (int k = 0; k <= n_bins; ++k) h.edges[static_cast<std::size_t>(k)] = k;
    return h;
  }
  double lo = *std::min_element(logs.begin(), logs.end());
  double hi = *std::max_element(logs.begin(), logs.end());
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / n_bins;
  h.edges.resize(static_cast<std::size_t>(n_bins) + 1);
  for (int k = 0; k <= n_bins; ++k) h.edges[static_cast<std::size_t>(k)] = lo + k * width;
  h.edges.back() = hi;
  for (double x : logs) {
    int bin = static_cast<int>((x - lo) / width);
    bin = std::clamp(bin, 0, n_bins - 1);
    ++h.counts[static_cast<std::size_t>(bin)];
  }
  return h;
}

void write_histogram_csv(std::ostream& out, const Histogram& hist) {
  const auto old = out.precision(10);
  out << "bin_lo_log10,bin_hi_log10,count\n";
  out << "-inf,-inf," << hist.underflow << '\n';
  for (std::size_t k = 0; k < hist.counts.size(); ++k) {
    out << hist.edges[k] << ',' << hist.edges[k + 1] << ',' << hist.counts[k] << '\n';
  }
  out.precision(old);
}

bool pin_current_thread() noexcept {
#ifdef __linux__
  const int cpu = sched_getcpu();
  if (cpu < 0) return false;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  return sched_setaffinity(0, sizeof(set), &set) == 0;
#else
  return false;
#endif
}

}  // namespace lineint::bench
