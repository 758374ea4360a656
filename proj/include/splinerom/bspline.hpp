#pragma once

// Floating-point reference for uniform cubic B-spline quasi-interpolation.
//
// A signal sampled at nodes x_r = a + r*h is turned into smoothing
// coefficients with the local three-point stencil
//     b_r = (-f_{r-1} + 8 f_r - f_{r+1}) / 6
// and reconstructed as S(x) = sum_i b_i B3((x - a)/h - i), where only the
// four terms i = k-1 .. k+2 are nonzero on the knot interval [x_k, x_{k+1}).

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace splinerom {

inline constexpr int kSplineDegree = 3;

/// Extension nodes added on each side of the interval for the cubic case:
/// 2m points in total, m per side.
inline constexpr int kCubicMargin = kSplineDegree;

/// Sampling lattice a + r*h, r = 0 .. n-1, with a + (n-1)*h = b.
class UniformGrid {
 public:
  /// Throws ShapeError unless h > 0, b > a, (b - a)/h is integral within
  /// 1e-9 relative tolerance, and the grid has at least four nodes.
  UniformGrid(double a, double b, double h);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double h() const noexcept { return h_; }
  int n() const noexcept { return n_; }

  /// Position of node r; r may lie outside 0 .. n-1 for extension nodes.
  double node(int r) const noexcept { return a_ + r * h_; }

  bool operator==(const UniformGrid&) const = default;

 private:
  double a_;
  double b_;
  double h_;
  int n_;
};

enum class ExtensionRule {
  kZeroPad,               // exterior samples are 0
  kLinearExtrapolate,     // line through the two nearest interior samples
  kQuadraticExtrapolate,  // parabola through the three nearest interior samples
};

std::string_view to_string(ExtensionRule rule);
/// Accepts "zero-pad", "linear", "quadratic" and the long forms
/// "linear-extrapolate" / "quadratic-extrapolate". Throws ParseError.
ExtensionRule parse_extension_rule(std::string_view name);

/// Node values on a grid plus `margin` extension values on each side.
/// values[margin + r] holds f_r.
class SampledSignal {
 public:
  /// Throws ShapeError if values.size() != grid.n() + 2*margin or margin < 0.
  SampledSignal(UniformGrid grid, std::vector<double> values, int margin);

  const UniformGrid& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  int margin() const noexcept { return margin_; }

  /// f_r for r in -margin .. n-1+margin.
  double at(int r) const;
  std::span<const double> interior() const noexcept {
    return std::span<const double>(values_).subspan(static_cast<std::size_t>(margin_),
                                                    static_cast<std::size_t>(grid_.n()));
  }

 private:
  UniformGrid grid_;
  std::vector<double> values_;
  int margin_;
};

/// Coefficients b_i for i = -1 .. n; storage position is i + index_offset().
class CoefficientVector {
 public:
  /// Throws ShapeError if coeffs.size() != grid.n() + 2.
  CoefficientVector(UniformGrid grid, std::vector<double> coeffs);

  const UniformGrid& grid() const noexcept { return grid_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  static constexpr int index_offset() noexcept { return 1; }
  int first_index() const noexcept { return -1; }
  int last_index() const noexcept { return grid_.n(); }

  /// b_i; throws DomainError for i outside -1 .. n.
  double at(int i) const;

 private:
  UniformGrid grid_;
  std::vector<double> coeffs_;
};

/// Cubic basic spline at unit spacing. Zero for |x| >= 2, peak 2/3 at 0.
/// Throws DomainError for non-finite x.
double eval_basis(double x);

/// Pads `raw` (one value per grid node) with `margin` values on each side.
/// Throws ShapeError on a length mismatch, margin < 1, or when an
/// extrapolating rule lacks enough interior samples.
SampledSignal extend_signal(std::span<const double> raw, const UniformGrid& grid, int margin,
                            ExtensionRule rule = ExtensionRule::kQuadraticExtrapolate);

/// Three-point stencil over the extended signal. Coefficients b_{-1} and b_n
/// reach f_{-2} and f_{n+1}, so the signal needs margin >= 2 (ShapeError).
CoefficientVector compute_coefficients(const SampledSignal& signal);

/// The four nonzero basis terms at x: window k (interval [x_k, x_{k+1})) and
/// the weights B_{k-1}(x) .. B_{k+2}(x).
struct LocalBasis {
  int window;
  std::array<double, 4> weights;
};

/// Half-open intervals, the last one closed at b. Throws DomainError for x
/// outside [a, b].
LocalBasis local_basis(const UniformGrid& grid, double x);

/// Four-term local sum at x in [a, b]. Throws DomainError otherwise.
double evaluate_spline_local(const CoefficientVector& coeffs, double x);

/// Element-wise evaluate_spline_local. The DomainError message names the
/// offending index.
std::vector<double> evaluate_spline(const CoefficientVector& coeffs, std::span<const double> xs);

}  // namespace splinerom
