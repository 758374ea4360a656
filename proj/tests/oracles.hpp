#pragma once

// Reference computations used only by the tests. None of these route through
// the library code they check.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

/// Cox-de Boor recursion for the cardinal cubic B-spline on knots
/// -2, -1, 0, 1, 2 (a completely different evaluation route from the
/// closed-form piecewise polynomial).
inline double cox_de_boor(double x) {
  constexpr int kDegree = 3;
  std::array<double, 4> n{};
  for (int i = 0; i < 4; ++i) {
    const double lo = -2.0 + i;
    n[static_cast<std::size_t>(i)] = (x >= lo && x < lo + 1.0) ? 1.0 : 0.0;
  }
  for (int p = 1; p <= kDegree; ++p) {
    for (int i = 0; i + p < 4; ++i) {
      const double ti = -2.0 + i;
      const double left = (x - ti) / p * n[static_cast<std::size_t>(i)];
      const double right = (ti + p + 1 - x) / p * n[static_cast<std::size_t>(i + 1)];
      n[static_cast<std::size_t>(i)] = left + right;
    }
  }
  return n[0];
}

/// Neville's scheme: value at t of the polynomial through (xs[i], ys[i]).
inline double neville(std::vector<double> xs, std::vector<double> ys, double t) {
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      ys[i] = ((t - xs[i + level]) * ys[i] + (xs[i] - t) * ys[i + 1]) / (xs[i] - xs[i + level]);
    }
  }
  return ys[0];
}

/// Unit in the last place of |v|.
inline double ulp(double v) {
  const double a = std::abs(v);
  return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

/// Sup over one knot interval of the quasi-interpolation error for
/// f(x) = x^4 / 24 (f'''' = 1) at unit spacing, by brute force over `phases`.
inline double quartic_error_constant(int phases = 4000) {
  const auto f = [](double x) { return x * x * x * x / 24.0; };
  const auto basis = [](double x) { return cox_de_boor(x); };
  double worst = 0.0;
  for (int p = 0; p <= phases; ++p) {
    const double t = static_cast<double>(p) / phases;
    double s = 0.0;
    for (int i = -1; i <= 2; ++i) {
      const double b = (-f(i - 1.0) + 8.0 * f(i) - f(i + 1.0)) / 6.0;
      s += b * basis(t - i);
    }
    worst = std::max(worst, std::abs(s - f(t)));
  }
  return worst;
}

/// Fourth central difference estimate of max |f''''| over [a, b].
template <typename F>
double fourth_derivative_max(F f, double a, double b, int samples = 2000) {
  const double d = 2e-3;
  double worst = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double x = a + (b - a) * i / samples;
    const double v =
        (f(x - 2 * d) - 4 * f(x - d) + 6 * f(x) - 4 * f(x + d) + f(x + 2 * d)) / (d * d * d * d);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace oracle
