#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lineint/bench.hpp"

namespace fs = std::filesystem;
namespace bench = lineint::bench;

namespace {

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accuracy and timing benchmark for double line integrals of the SE kernel"};
  std::vector<int> sets{1, 2, 3, 4, 5, 6, 7, 8};
  int pairs = 1000;
  int dim = 6;
  std::uint64_t seed = 42;
  std::vector<std::string> method_names{"proposed", "bivariate", "simpson10", "simpson100",
                                        "simpson200"};
  int repeats = 11;
  double eps_w = lineint::DegeneracyPolicy{}.eps_w;
  double eps_det = lineint::DegeneracyPolicy{}.eps_det;
  std::string out_dir = "bench_out";
  int bins = 30;
  bool no_timing = false;

  app.add_option("--sets", sets, "Comma-separated set ids in 1..8")
      ->delimiter(',')
      ->check(CLI::Range(1, 8))
      ->capture_default_str();
  app.add_option("--pairs", pairs, "Pairs per set")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--dim", dim, "Input dimension m")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", seed, "Generator seed")->capture_default_str();
  app.add_option("--methods", method_names, "proposed, bivariate, simpson<p>")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--repeats", repeats, "Timed repeats per method and pair (median kept)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--eps-w", eps_w, "Degenerate-span threshold on |V w|")->capture_default_str();
  app.add_option("--eps-det", eps_det, "Relative determinant gate of the bivariate method")
      ->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--bins", bins, "Histogram bins")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_flag("--no-timing", no_timing, "Single untimed evaluation per method (errors only)");
  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<lineint::MethodChoice> methods;
    for (const std::string& name : method_names) methods.push_back(lineint::MethodChoice::parse(name));
    const lineint::DegeneracyPolicy policy(eps_w, eps_det);
    std::vector<bench::SetSpec> specs;
    for (int set : sets) specs.emplace_back(set, pairs, dim, seed);

    if (!no_timing && !bench::pin_current_thread()) {
      std::cerr << "note: could not pin the benchmark thread\n";
    }
    bench::RunOptions options;
    options.repeats = repeats;
    options.time_methods = !no_timing;
    const bench::BenchResult result = bench::run_benchmark(specs, methods, policy, options);
    const bench::Summary summary = bench::summarize(result.records);

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    {
      auto out = open_out(dir / "summary.csv");
      bench::write_summary_csv(out, summary);
    }
    {
      auto out = open_out(dir / "records.csv");
      bench::write_records_csv(out, result.records);
    }
    for (int set : sets) {
      for (const lineint::MethodChoice& m : methods) {
        const std::string label = m.label();
        try {
          const bench::Histogram h = bench::histogram(result.records, set, label, bins);
          auto out = open_out(dir / ("hist_" + std::to_string(set) + "_" + label + ".csv"));
          bench::write_histogram_csv(out, h);
        } catch (const std::invalid_argument&) {
          // Every pair of this set was excluded by an oracle cap.
        }
      }
    }
    bench::write_summary_text(std::cout, summary);

    const int capped = result.depth_capped();
    if (capped > 0) {
      std::cerr << capped << " oracle evaluation(s) hit the depth cap; see records.csv\n";
      return 2;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
