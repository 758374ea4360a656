#include "splinerom/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "splinerom/errors.hpp"

namespace splinerom {

namespace {

// Errors below this (relative to the function scale) are rounding noise.
constexpr double kRoundingFloor = 1e-13;

void check(const ErrorBoundInput& input) {
  if (!(input.h > 0.0) || !std::isfinite(input.h)) throw DomainError("bound: h must be positive");
  if (!(input.deriv_bound >= 0.0) || !std::isfinite(input.deriv_bound)) {
    throw DomainError("bound: derivative bound must be non-negative");
  }
}

Rational reduce(std::int64_t num, std::int64_t den) {
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

double h4(double h) { return h * h * h * h; }

double ln1p_d4_max(double a, double) { return 6.0 / h4(1.0 + a); }

double sin_d4_max(double a, double b) {
  // |sin| peaks at pi/2 + j*pi.
  const double first_peak = std::ceil((a - std::numbers::pi / 2) / std::numbers::pi);
  if (std::numbers::pi / 2 + first_peak * std::numbers::pi <= b) return 1.0;
  return std::max(std::abs(std::sin(a)), std::abs(std::sin(b)));
}

double exp_d4_max(double, double b) { return std::exp(b); }

double ln1p_value(double x) { return std::log1p(x); }
double sin_value(double x) { return std::sin(x); }
double exp_value(double x) { return std::exp(x); }

constexpr std::array<BuiltinFunction, 3> kBuiltins{{
    {"ln1p", &ln1p_value, &ln1p_d4_max},
    {"sin", &sin_value, &sin_d4_max},
    {"exp", &exp_value, &exp_d4_max},
}};

}  // namespace

double spline_error_bound(const ErrorBoundInput& input) {
  check(input);
  return 5.0 / 384.0 * h4(input.h) * input.deriv_bound;
}

double poly_error_bound(const ErrorBoundInput& input) {
  check(input);
  return 1.0 / 24.0 * h4(input.h) * input.deriv_bound;
}

Rational spline_bound_constant() { return reduce(5, 384); }
Rational poly_bound_constant() { return reduce(1, 24); }

Rational exact_bound_ratio() {
  const Rational p = poly_bound_constant();
  const Rational s = spline_bound_constant();
  return reduce(p.num * s.den, p.den * s.num);
}

ErrorReport compare_bounds(double h, double deriv_bound) {
  const ErrorBoundInput input{h, deriv_bound};
  ErrorReport report;
  report.bound_spline = spline_error_bound(input);
  report.bound_poly = poly_error_bound(input);
  report.ratio_exact = exact_bound_ratio();
  // With M = 0 both bounds vanish; the ratio of the constants still holds.
  report.ratio_bounds = report.bound_spline > 0.0 ? report.bound_poly / report.bound_spline
                                                  : report.ratio_exact.value();
  return report;
}

double empirical_max_error(const RealFunction& f, const RealFunction& approx, double a, double b,
                           int probes) {
  if (probes < 2) throw DomainError("empirical_max_error: need at least 2 probes");
  if (!(b > a)) throw DomainError("empirical_max_error: need b > a");
  double worst = 0.0;
  const double step = (b - a) / (probes - 1);
  for (int i = 0; i < probes; ++i) {
    const double x = i == probes - 1 ? b : a + i * step;
    const double err = std::abs(f(x) - approx(x));
    if (!std::isfinite(err)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite value at probe x = " << x;
      throw NumericError(os.str(), x);
    }
    worst = std::max(worst, err);
  }
  return worst;
}

SampledSignal sample_function(const RealFunction& f, const UniformGrid& grid, int margin) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(grid.n() + 2 * margin));
  for (int r = -margin; r < grid.n() + margin; ++r) values.push_back(f(grid.node(r)));
  return SampledSignal(grid, std::move(values), margin);
}

std::pair<double, double> interior_window(const UniformGrid& grid) {
  return {grid.a() + grid.h(), grid.b() - grid.h()};
}

double spline_interior_error(const RealFunction& f, double a, double b, double h, int probes) {
  const UniformGrid grid(a, b, h);
  const CoefficientVector coeffs = compute_coefficients(sample_function(f, grid));
  const auto [lo, hi] = interior_window(grid);
  return empirical_max_error(
      f, [&](double x) { return evaluate_spline_local(coeffs, x); }, lo, hi, probes);
}

std::optional<double> convergence_order(const RealFunction& f, std::span<const double> h_values,
                                        double a, double b, int probes) {
  if (h_values.size() < 2) throw DomainError("convergence_order: need at least two spacings");
  for (std::size_t i = 1; i < h_values.size(); ++i) {
    if (!(h_values[i] < h_values[i - 1])) {
      throw DomainError("convergence_order: spacings must be strictly decreasing");
    }
  }

  std::vector<double> log_h;
  std::vector<double> log_e;
  for (double h : h_values) {
    const UniformGrid grid = [&] {
      try {
        return UniformGrid(a, b, h);
      } catch (const ShapeError& e) {
        throw DomainError(std::string("convergence_order: ") + e.what());
      }
    }();
    double scale = 1.0;
    for (int r = 0; r < grid.n(); ++r) scale = std::max(scale, std::abs(f(grid.node(r))));
    const double err = spline_interior_error(f, a, b, h, probes);
    if (err <= kRoundingFloor * scale) return std::nullopt;
    log_h.push_back(std::log(h));
    log_e.push_back(std::log(err));
  }

  const double n = static_cast<double>(log_h.size());
  const double mean_h = std::accumulate(log_h.begin(), log_h.end(), 0.0) / n;
  const double mean_e = std::accumulate(log_e.begin(), log_e.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < log_h.size(); ++i) {
    sxy += (log_h[i] - mean_h) * (log_e[i] - mean_e);
    sxx += (log_h[i] - mean_h) * (log_h[i] - mean_h);
  }
  return sxy / sxx;
}

std::array<double, 4> fit_classical_cubic(std::span<const std::pair<double, double>, 4> samples) {
  std::array<double, 4> xs{};
  std::array<double, 4> dd{};
  for (std::size_t i = 0; i < 4; ++i) {
    xs[i] = samples[i].first;
    dd[i] = samples[i].second;
    for (std::size_t j = 0; j < i; ++j) {
      if (xs[j] == xs[i]) throw DegenerateInputError("fit_classical_cubic: repeated x value");
    }
  }
  // Newton divided differences, in place.
  for (std::size_t level = 1; level < 4; ++level) {
    for (std::size_t i = 3; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
    }
  }
  // Expand d0 + d1 (x-x0) + d2 (x-x0)(x-x1) + d3 (x-x0)(x-x1)(x-x2) into
  // power form: start from d3, then repeatedly multiply by (x - x_i) and add d_i.
  std::array<double, 4> c{dd[3], 0.0, 0.0, 0.0};
  for (std::size_t step = 0; step < 3; ++step) {
    const std::size_t i = 2 - step;
    for (std::size_t d = 3; d >= 1; --d) c[d] = c[d - 1] - xs[i] * c[d];
    c[0] = dd[i] - xs[i] * c[0];
  }
  return c;
}

HornerResult horner_eval(const std::array<double, 4>& c, double x) {
  return {((c[3] * x + c[2]) * x + c[1]) * x + c[0], kHornerCycles};
}

double classical_cubic_interior_error(const RealFunction& f, double a, double b, double h,
                                      int probes) {
  const UniformGrid grid(a, b, h);
  const SampledSignal samples = sample_function(f, grid, 1);
  std::vector<std::array<double, 4>> pieces;
  pieces.reserve(static_cast<std::size_t>(grid.n() - 1));
  for (int k = 0; k + 1 < grid.n(); ++k) {
    const std::array<std::pair<double, double>, 4> pts{{{-1.0, samples.at(k - 1)},
                                                        {0.0, samples.at(k)},
                                                        {1.0, samples.at(k + 1)},
                                                        {2.0, samples.at(k + 2)}}};
    pieces.push_back(fit_classical_cubic(pts));
  }
  const auto approx = [&](double x) {
    const double t = (x - a) / h;
    const int k = std::clamp(static_cast<int>(std::floor(t)), 0, grid.n() - 2);
    return horner_eval(pieces[static_cast<std::size_t>(k)], t - k).value;
  };
  const auto [lo, hi] = interior_window(grid);
  return empirical_max_error(f, approx, lo, hi, probes);
}

const BuiltinFunction& builtin_function(std::string_view name) {
  for (const auto& fn : kBuiltins) {
    if (fn.name == name) return fn;
  }
  throw ParseError("unknown function '" + std::string(name) + "' (expected ln1p, sin or exp)", 0);
}

std::span<const BuiltinFunction> builtin_functions() { return kBuiltins; }

}  // namespace splinerom
