#pragma once

// Methodical-error bounds for the cubic spline and for classical cubic
// polynomials, empirical error measurement, convergence-order estimation and
// the Horner baseline used for accuracy and cycle comparisons.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "splinerom/bspline.hpp"

namespace splinerom {

using RealFunction = std::function<double(double)>;

struct ErrorBoundInput {
  double h;            // node spacing
  double deriv_bound;  // M, the derivative-maximum factor of the bound
};

/// (5/384) h^4 M. Throws DomainError unless h > 0 and M >= 0.
double spline_error_bound(const ErrorBoundInput& input);

/// (1/24) h^4 M. Same preconditions.
double poly_error_bound(const ErrorBoundInput& input);

struct Rational {
  std::int64_t num;
  std::int64_t den;
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Rational&) const = default;
};

/// Bound constants as reduced fractions.
Rational spline_bound_constant();  // 5/384
Rational poly_bound_constant();    // 1/24
/// poly / spline constant, exact: 16/5.
Rational exact_bound_ratio();

struct ErrorReport {
  double bound_spline = 0.0;
  double bound_poly = 0.0;
  double empirical_max = 0.0;
  int probes = 0;
  double ratio_bounds = 0.0;
  Rational ratio_exact{16, 5};
};

/// Both bounds for (h, M) and their ratio; empirical fields left at zero.
ErrorReport compare_bounds(double h, double deriv_bound);

/// max |f(x) - approx(x)| over `probes` equispaced points of [a, b],
/// endpoints included. Throws DomainError unless probes >= 2 and b > a;
/// throws NumericError (with x) on a non-finite value.
double empirical_max_error(const RealFunction& f, const RealFunction& approx, double a, double b,
                           int probes);

/// Samples f at every node of the grid and at `margin` exterior nodes per side.
SampledSignal sample_function(const RealFunction& f, const UniformGrid& grid,
                              int margin = kCubicMargin);

/// Interior window of [a, b]: one knot interval dropped at each end.
std::pair<double, double> interior_window(const UniformGrid& grid);

/// Spline error of f on the interior window for spacing h, `probes` points.
double spline_interior_error(const RealFunction& f, double a, double b, double h, int probes);

/// Least-squares slope of log(error) against log(h), errors measured on each
/// grid's interior window. Returns nullopt ("order undefined") when any error
/// is at rounding level. Throws DomainError unless h_values is strictly
/// decreasing with at least two entries, each dividing b - a.
std::optional<double> convergence_order(const RealFunction& f, std::span<const double> h_values,
                                        double a, double b, int probes = 10000);

/// Power-form coefficients c0..c3 of the cubic through four points.
/// Throws DegenerateInputError on repeated x.
std::array<double, 4> fit_classical_cubic(std::span<const std::pair<double, double>, 4> samples);

/// Sequential Horner cost: 3 multiplies + 3 additions at 1 cycle each.
inline constexpr std::int64_t kHornerCycles = 6;

struct HornerResult {
  double value;
  std::int64_t cycles;
};

/// ((c3 x + c2) x + c1) x + c0.
HornerResult horner_eval(const std::array<double, 4>& coefficients, double x);

/// Piecewise classical cubic: on [x_k, x_{k+1}] the cubic through
/// x_{k-1} .. x_{k+2} (exterior nodes sampled from f), evaluated by Horner in
/// the local coordinate (x - x_k)/h. Max error over the interior window.
double classical_cubic_interior_error(const RealFunction& f, double a, double b, double h,
                                      int probes);

/// Test functions with known fourth-derivative maxima.
struct BuiltinFunction {
  std::string_view name;
  double (*value)(double);
  /// max |f''''| over [a, b].
  double (*max_abs_fourth_derivative)(double a, double b);
};

/// "ln1p", "sin", "exp". Throws ParseError for anything else.
const BuiltinFunction& builtin_function(std::string_view name);
std::span<const BuiltinFunction> builtin_functions();

}  // namespace splinerom
