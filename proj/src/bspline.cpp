#include "splinerom/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "splinerom/errors.hpp"

namespace splinerom {

namespace {

constexpr double kGridTolerance = 1e-9;

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Value of the parabola through (0, f0), (1, f1), (2, f2) at t.
double quadratic_through(double f0, double f1, double f2, double t) {
  return f0 * (t - 1.0) * (t - 2.0) / 2.0 - f1 * t * (t - 2.0) + f2 * t * (t - 1.0) / 2.0;
}

}  // namespace

UniformGrid::UniformGrid(double a, double b, double h) : a_(a), b_(b), h_(h), n_(0) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(h)) {
    throw ShapeError("grid parameters must be finite");
  }
  if (!(h > 0.0)) throw ShapeError("grid spacing h must be positive, got " + describe(h));
  if (!(b > a)) throw ShapeError("grid interval needs b > a");
  const double steps = (b - a) / h;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > kGridTolerance * std::max(1.0, steps)) {
    throw ShapeError("(b - a) / h = " + describe(steps) + " is not an integer");
  }
  n_ = static_cast<int>(rounded) + 1;
  if (n_ < 4) {
    throw ShapeError("grid has " + std::to_string(n_) + " nodes; at least 4 are required");
  }
}

std::string_view to_string(ExtensionRule rule) {
  switch (rule) {
    case ExtensionRule::kZeroPad:
      return "zero-pad";
    case ExtensionRule::kLinearExtrapolate:
      return "linear";
    case ExtensionRule::kQuadraticExtrapolate:
      return "quadratic";
  }
  return "unknown";
}

ExtensionRule parse_extension_rule(std::string_view name) {
  if (name == "zero-pad") return ExtensionRule::kZeroPad;
  if (name == "linear" || name == "linear-extrapolate") return ExtensionRule::kLinearExtrapolate;
  if (name == "quadratic" || name == "quadratic-extrapolate") {
    return ExtensionRule::kQuadraticExtrapolate;
  }
  throw ParseError("unknown extension rule '" + std::string(name) + "'", 0);
}

SampledSignal::SampledSignal(UniformGrid grid, std::vector<double> values, int margin)
    : grid_(std::move(grid)), values_(std::move(values)), margin_(margin) {
  if (margin_ < 0) throw ShapeError("signal margin must be non-negative");
  const auto expected = static_cast<std::size_t>(grid_.n()) + 2 * static_cast<std::size_t>(margin_);
  if (values_.size() != expected) {
    throw ShapeError("signal has " + std::to_string(values_.size()) + " values, expected " +
                     std::to_string(expected));
  }
}

double SampledSignal::at(int r) const {
  if (r < -margin_ || r >= grid_.n() + margin_) {
    throw ShapeError("sample index " + std::to_string(r) + " outside the extended signal");
  }
  return values_[static_cast<std::size_t>(r + margin_)];
}

CoefficientVector::CoefficientVector(UniformGrid grid, std::vector<double> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  const auto expected = static_cast<std::size_t>(grid_.n()) + 2;
  if (coeffs_.size() != expected) {
    throw ShapeError("coefficient vector has " + std::to_string(coeffs_.size()) +
                     " entries, expected " + std::to_string(expected));
  }
}

double CoefficientVector::at(int i) const {
  if (i < first_index() || i > last_index()) {
    throw DomainError("coefficient index " + std::to_string(i) + " outside -1 .. " +
                      std::to_string(last_index()));
  }
  return coeffs_[static_cast<std::size_t>(i + index_offset())];
}

double eval_basis(double x) {
  if (!std::isfinite(x)) throw DomainError("eval_basis: non-finite argument");
  // Both signs go through the same branch.
  const double ax = std::abs(x);
  if (ax >= 2.0) return 0.0;
  if (ax >= 1.0) {
    const double d = 2.0 - ax;
    return d * d * d / 6.0;
  }
  const double u = 1.0 - ax;
  return (1.0 + 3.0 * u + 3.0 * u * u - 3.0 * u * u * u) / 6.0;
}

SampledSignal extend_signal(std::span<const double> raw, const UniformGrid& grid, int margin,
                            ExtensionRule rule) {
  const auto n = static_cast<std::size_t>(grid.n());
  if (raw.size() != n) {
    throw ShapeError("extend_signal: " + std::to_string(raw.size()) + " samples for a " +
                     std::to_string(n) + "-node grid");
  }
  if (margin < 1) throw ShapeError("extend_signal: margin must be at least 1");

  const auto m = static_cast<std::size_t>(margin);
  std::vector<double> values(n + 2 * m, 0.0);
  std::copy(raw.begin(), raw.end(), values.begin() + static_cast<std::ptrdiff_t>(m));

  for (std::size_t j = 1; j <= m; ++j) {
    const double t = -static_cast<double>(j);
    double left = 0.0;
    double right = 0.0;
    switch (rule) {
      case ExtensionRule::kZeroPad:
        break;
      case ExtensionRule::kLinearExtrapolate:
        left = raw[0] + (raw[0] - raw[1]) * static_cast<double>(j);
        right = raw[n - 1] + (raw[n - 1] - raw[n - 2]) * static_cast<double>(j);
        break;
      case ExtensionRule::kQuadraticExtrapolate:
        left = quadratic_through(raw[0], raw[1], raw[2], t);
        right = quadratic_through(raw[n - 1], raw[n - 2], raw[n - 3], t);
        break;
    }
    values[m - j] = left;
    values[m + n - 1 + j] = right;
  }
  return SampledSignal(grid, std::move(values), margin);
}

CoefficientVector compute_coefficients(const SampledSignal& signal) {
  if (signal.margin() < 2) {
    throw ShapeError("compute_coefficients: margin " + std::to_string(signal.margin()) +
                     " is too small; b_{-1} and b_n need two extension samples per side");
  }
  const int n = signal.grid().n();
  std::vector<double> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n) + 2);
  for (int r = -1; r <= n; ++r) {
    coeffs.push_back((-signal.at(r - 1) + 8.0 * signal.at(r) - signal.at(r + 1)) / 6.0);
  }
  return CoefficientVector(signal.grid(), std::move(coeffs));
}

LocalBasis local_basis(const UniformGrid& grid, double x) {
  if (!std::isfinite(x) || x < grid.a() || x > grid.b()) {
    throw DomainError("x = " + describe(x) + " outside [" + describe(grid.a()) + ", " +
                      describe(grid.b()) + "]");
  }
  const double t = (x - grid.a()) / grid.h();
  int k = static_cast<int>(std::floor(t));
  k = std::clamp(k, 0, grid.n() - 2);

  LocalBasis out{k, {}};
  for (int j = 0; j < 4; ++j) {
    const int i = k - 1 + j;
    out.weights[static_cast<std::size_t>(j)] = eval_basis(t - i);
  }
  return out;
}

double evaluate_spline_local(const CoefficientVector& coeffs, double x) {
  const LocalBasis basis = local_basis(coeffs.grid(), x);
  double sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    sum += coeffs.at(basis.window - 1 + j) * basis.weights[static_cast<std::size_t>(j)];
  }
  return sum;
}

std::vector<double> evaluate_spline(const CoefficientVector& coeffs, std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (std::size_t idx = 0; idx < xs.size(); ++idx) {
    try {
      out.push_back(evaluate_spline_local(coeffs, xs[idx]));
    } catch (const DomainError& e) {
      throw DomainError("evaluate_spline: probe " + std::to_string(idx) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace splinerom
