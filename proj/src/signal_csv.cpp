#include "splinerom/signal_csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "splinerom/errors.hpp"

namespace splinerom {

namespace {

constexpr double kSpacingTolerance = 1e-9;

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_real(const std::string& text, std::size_t line_no, const char* column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ParseError(
        "line " + std::to_string(line_no) + ": bad " + column + " value '" + text + "'", line_no);
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

SampledSignal read_signal_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty signal file", 1);
  ++line_no;
  const auto header = split_fields(line);
  if (header.size() < 2 || header[0] != "x" || header[1] != "f") {
    throw ParseError("line 1: header must start with 'x,f'", 1);
  }
  std::size_t node_col = header.size();
  for (std::size_t i = 2; i < header.size(); ++i) {
    if (header[i] == "node") node_col = i;
  }

  std::vector<double> xs;
  std::vector<double> fs;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_fields(line);
    if (fields.size() < 2) {
      throw ParseError("line " + std::to_string(line_no) + ": expected at least 2 fields", line_no);
    }
    if (node_col < header.size()) {
      if (fields.size() <= node_col) {
        throw ParseError("line " + std::to_string(line_no) + ": missing node column", line_no);
      }
      if (fields[node_col] != "1") continue;
    }
    if (fields[1].empty()) continue;
    const double x = parse_real(fields[0], line_no, "x");
    const double f = parse_real(fields[1], line_no, "f");
    if (!xs.empty() && !(x > xs.back())) {
      throw ParseError("line " + std::to_string(line_no) + ": x values must strictly increase",
                       line_no);
    }
    xs.push_back(x);
    fs.push_back(f);
  }

  if (xs.size() < 4) {
    throw ShapeError("signal has " + std::to_string(xs.size()) + " nodes; at least 4 are required");
  }
  const double span = xs.back() - xs.front();
  const double h = span / static_cast<double>(xs.size() - 1);
  // Relative to the spacing, plus rounding slack for the x magnitude.
  const double magnitude = std::max(std::abs(xs.front()), std::abs(xs.back()));
  const double tolerance =
      kSpacingTolerance * h + 4.0 * std::numeric_limits<double>::epsilon() * magnitude;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double expected = xs.front() + static_cast<double>(i) * h;
    if (std::abs(xs[i] - expected) > tolerance) {
      throw ShapeError("signal x values are not uniformly spaced (node " + std::to_string(i) + ")");
    }
  }
  return SampledSignal(UniformGrid(xs.front(), xs.back(), h), std::move(fs), 0);
}

SampledSignal read_signal_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_signal_csv(in);
}

void write_signal_csv(const SampledSignal& signal, std::ostream& out) {
  out << "x,f\n";
  const auto values = signal.interior();
  for (int r = 0; r < signal.grid().n(); ++r) {
    out << format_real(signal.grid().node(r)) << ','
        << format_real(values[static_cast<std::size_t>(r)]) << '\n';
  }
}

}  // namespace splinerom
