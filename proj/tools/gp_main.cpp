#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lineint/gp.hpp"

namespace {

// One point per row, comma-separated coordinates; '#' and blank rows skipped.
std::vector<lineint::Vector> read_points(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open points file '" + path + "'");
  std::vector<lineint::Vector> points;
  std::string row;
  int line_no = 0;
  while (std::getline(in, row)) {
    ++line_no;
    if (row.empty() || row.front() == '#') continue;
    std::vector<double> xs;
    std::stringstream fields(row);
    std::string field;
    while (std::getline(fields, field, ',')) {
      double x = 0.0;
      const char* first = field.data();
      const char* last = first + field.size();
      while (first < last && *first == ' ') ++first;
      const auto [end, ec] = std::from_chars(first, last, x);
      if (ec != std::errc() || end != last) {
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad number '" + field + "'");
      }
      xs.push_back(x);
    }
    if (static_cast<int>(xs.size()) != dim) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(dim) + " coordinates");
    }
    points.push_back(Eigen::Map<const lineint::Vector>(xs.data(), dim));
  }
  return points;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GP posterior at test points from line-integral observations"};
  std::string data_path;
  std::string points_path;
  std::vector<double> v_diag;
  std::string method_name = "proposed";
  app.add_option("--data", data_path, "Dataset file (m,sigma_n header then p,w,y rows)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--points", points_path, "Test points, one comma-separated point per row")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--v-diag", v_diag, "Diagonal of V (default: identity)")->delimiter(',');
  app.add_option("--method", method_name, "Double-integral method")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const lineint::LineDataset data = lineint::read_dataset_file(data_path);
    const int m = data.dim();
    const lineint::ScalingMatrix v =
        v_diag.empty() ? lineint::ScalingMatrix::identity(m)
                       : lineint::ScalingMatrix::diagonal(
                             Eigen::Map<const lineint::Vector>(v_diag.data(), static_cast<Eigen::Index>(v_diag.size())));
    const std::vector<lineint::Vector> points = read_points(points_path, m);
    const lineint::Posterior post =
        lineint::gp_predict(data, points, v, lineint::MethodChoice::parse(method_name));

    std::cout.precision(17);
    for (int k = 0; k < m; ++k) std::cout << 'z' << k << ',';
    std::cout << "mean,variance\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (int k = 0; k < m; ++k) std::cout << points[i](k) << ',';
      const auto r = static_cast<Eigen::Index>(i);
      std::cout << post.mean(r) << ',' << post.variance(r) << '\n';
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
