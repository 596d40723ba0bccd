#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lineint/gp.hpp"

namespace lineint {
namespace {

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw std::runtime_error("dataset line " + std::to_string(line_no) + ": " + msg);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<double> parse_row(std::string_view row, int line_no) {
  std::vector<double> out;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = row.find(',', pos);
    const std::string_view field =
        trim(row.substr(pos, comma == std::string_view::npos ? row.npos : comma - pos));
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || end != field.data() + field.size()) {
      fail(line_no, "cannot parse '" + std::string(field) + "' as a number");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

LineDataset read_dataset(std::istream& in) {
  std::string raw;
  int line_no = 0;
  int m = 0;
  double sigma_n = 0.0;
  bool have_header = false;
  std::vector<Line> lines;
  std::vector<double> ys;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view row = trim(raw);
    if (row.empty() || row.front() == '#') continue;
    const std::vector<double> values = parse_row(row, line_no);
    if (!have_header) {
      if (values.size() != 2) fail(line_no, "header must be 'm,sigma_n'");
      if (values[0] < 1 || values[0] != static_cast<int>(values[0])) {
        fail(line_no, "m must be a positive integer");
      }
      m = static_cast<int>(values[0]);
      sigma_n = values[1];
      have_header = true;
      continue;
    }
    if (values.size() != static_cast<std::size_t>(2 * m + 1)) {
      fail(line_no, "expected " + std::to_string(2 * m + 1) + " values, got " +
                        std::to_string(values.size()));
    }
    Vector p(m), w(m);
    for (int k = 0; k < m; ++k) {
      p(k) = values[k];
      w(k) = values[m + k];
    }
    try {
      lines.emplace_back(std::move(p), std::move(w));
    } catch (const std::exception& ex) {
      fail(line_no, ex.what());
    }
    ys.push_back(values[2 * m]);
  }
  if (!have_header) throw std::runtime_error("dataset: missing 'm,sigma_n' header");

  Vector y(static_cast<Eigen::Index>(ys.size()));
  for (std::size_t k = 0; k < ys.size(); ++k) y(static_cast<Eigen::Index>(k)) = ys[k];
  return LineDataset(std::move(lines), std::move(y), sigma_n);
}

LineDataset read_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
  return read_dataset(in);
}

void write_dataset(std::ostream& out, const LineDataset& data) {
  const auto old_precision = out.precision(17);
  out << "# m,sigma_n then rows p[0..m), w[0..m), y\n";
  out << data.dim() << ',' << data.noise_std << '\n';
  for (int i = 0; i < data.size(); ++i) {
    const Line& line = data.lines[i];
    for (int k = 0; k < line.dim(); ++k) out << line.start(k) << ',';
    for (int k = 0; k < line.dim(); ++k) out << line.span(k) << ',';
    out << data.y(i) << '\n';
  }
  out.precision(old_precision);
}

}  // namespace lineint
