#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "splinerom/error_analysis.hpp"
#include "splinerom/errors.hpp"

using namespace splinerom;

TEST_CASE("spline bound values") {
  CHECK(spline_error_bound({1.0 / 32, 1.0}) == doctest::Approx(5.0 / (384.0 * 1048576.0)));
  CHECK(spline_error_bound({1.0 / 32, 1.0}) == doctest::Approx(1.2418e-8).epsilon(1e-4));
  CHECK(spline_error_bound({1.0 / 32, 0.0}) == 0.0);
  CHECK(spline_error_bound({1.0 / 16, 1.0}) == 16 * spline_error_bound({1.0 / 32, 1.0}));
  CHECK_THROWS_AS(spline_error_bound({0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(spline_error_bound({0.1, -1.0}), DomainError);
}

TEST_CASE("polynomial bound values") {
  CHECK(poly_error_bound({1.0 / 32, 1.0}) == doctest::Approx(1.0 / (24.0 * 1048576.0)));
  CHECK(poly_error_bound({1.0 / 32, 1.0}) == doctest::Approx(3.974e-8).epsilon(1e-3));
  CHECK(poly_error_bound({1.0 / 32, 0.0}) == 0.0);
}

TEST_CASE("bounds scale exactly with h and M") {
  for (int e = 1; e <= 10; ++e) {
    const double h = std::ldexp(1.0, -e);
    CHECK(spline_error_bound({2 * h, 1.0}) / spline_error_bound({h, 1.0}) == 16.0);
    CHECK(poly_error_bound({2 * h, 1.0}) / poly_error_bound({h, 1.0}) == 16.0);
    CHECK(spline_error_bound({h, 3.0}) == doctest::Approx(3.0 * spline_error_bound({h, 1.0})));
  }
}

TEST_CASE("bound ratio is 16/5") {
  CHECK(exact_bound_ratio() == Rational{16, 5});
  CHECK(spline_bound_constant() == Rational{5, 384});
  CHECK(poly_bound_constant() == Rational{1, 24});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> hs(1e-3, 1.0);
  std::uniform_real_distribution<double> ms(0.1, 100.0);
  for (int i = 0; i < 200; ++i) {
    const ErrorReport r = compare_bounds(hs(rng), ms(rng));
    CHECK(r.ratio_bounds == doctest::Approx(3.2).epsilon(1e-14));
    CHECK(r.ratio_exact == Rational{16, 5});
  }
  const ErrorReport one = compare_bounds(1.0 / 32, 1.0);
  const ErrorReport two = compare_bounds(1.0 / 32, 2.0);
  CHECK(two.bound_spline == 2 * one.bound_spline);
  CHECK(two.bound_poly == 2 * one.bound_poly);
  CHECK(two.ratio_bounds == one.ratio_bounds);
  CHECK(compare_bounds(0.5, 0.0).ratio_bounds == doctest::Approx(3.2));
}

TEST_CASE("empirical_max_error") {
  const auto f = [](double x) { return std::sin(x); };
  CHECK(empirical_max_error(f, f, 0.0, 2.0, 100) == 0.0);
  CHECK(empirical_max_error(f, [](double x) { return std::sin(x) + 0.5; }, 0.0, 1.0, 2) == 0.5);
  CHECK_THROWS_AS(empirical_max_error(f, f, 0.0, 2.0, 1), DomainError);
  CHECK_THROWS_AS(empirical_max_error(f, f, 2.0, 2.0, 10), DomainError);
  try {
    empirical_max_error([](double x) { return std::log(x - 1.0); }, f, 0.0, 2.0, 3);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.x() == 0.0);
  }
  // Constant signal through the spline.
  const auto one = [](double) { return 1.0; };
  CHECK(spline_interior_error(one, 0.0, 2.0, 1.0 / 32, 1000) <= 1e-12);
}

TEST_CASE("quasi-interpolation error constant") {
  // Brute-force sup over the phase for x^4/24: 35/1152.
  CHECK(oracle::quartic_error_constant() == doctest::Approx(35.0 / 1152.0).epsilon(1e-6));
  // Every built-in respects (35/1152) h^4 max|f''''| on the interior window.
  const double c = oracle::quartic_error_constant();
  for (const auto& fn : builtin_functions()) {
    for (double h : {1.0 / 8, 1.0 / 16, 1.0 / 32}) {
      const double m = fn.max_abs_fourth_derivative(0.0, 2.0);
      CHECK(spline_interior_error(fn.value, 0.0, 2.0, h, 4000) <= c * h * h * h * h * m);
    }
  }
}

TEST_CASE("convergence order") {
  const std::vector<double> ladder{1.0 / 8, 1.0 / 16, 1.0 / 32};
  const auto ln = convergence_order([](double x) { return std::log1p(x); }, ladder, 0.0, 2.0);
  REQUIRE(ln.has_value());
  CHECK(*ln >= 3.7);
  CHECK(*ln <= 4.3);
  const auto s = convergence_order([](double x) { return std::sin(x); }, ladder, 0.0, 2.0);
  REQUIRE(s.has_value());
  CHECK(*s >= 3.7);
  CHECK(*s <= 4.3);
  CHECK_FALSE(convergence_order([](double x) { return 3.0 * x - 1.0; }, ladder, 0.0, 2.0));

  const std::vector<double> increasing{1.0 / 32, 1.0 / 16};
  CHECK_THROWS_AS(convergence_order([](double x) { return x; }, increasing, 0.0, 2.0), DomainError);
  const std::vector<double> single{1.0 / 32};
  CHECK_THROWS_AS(convergence_order([](double x) { return x; }, single, 0.0, 2.0), DomainError);
  const std::vector<double> uneven{0.3, 0.25};
  CHECK_THROWS_AS(convergence_order([](double x) { return x; }, uneven, 0.0, 2.0), DomainError);
}

TEST_CASE("fit_classical_cubic") {
  using Pts = std::array<std::pair<double, double>, 4>;
  const auto cube = fit_classical_cubic(Pts{{{0, 0}, {1, 1}, {2, 8}, {3, 27}}});
  CHECK(cube[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(cube[1] == doctest::Approx(0.0).scale(1.0));
  CHECK(cube[2] == doctest::Approx(0.0).scale(1.0));
  CHECK(cube[3] == doctest::Approx(1.0));

  const auto five = fit_classical_cubic(Pts{{{-1, 5}, {0.5, 5}, {2, 5}, {7, 5}}});
  CHECK(five == std::array<double, 4>{5, 0, 0, 0});

  Pts ln;
  for (int i = 0; i < 4; ++i) ln[i] = {i / 3.0, std::log1p(i / 3.0)};
  const auto c = fit_classical_cubic(ln);
  for (const auto& [x, y] : ln) CHECK(std::abs(horner_eval(c, x).value - y) <= 1e-12);

  CHECK_THROWS_AS(fit_classical_cubic(Pts{{{0, 1}, {1, 2}, {1, 3}, {2, 4}}}), DegenerateInputError);
}

TEST_CASE("horner_eval") {
  const auto r = horner_eval({0, 0, 0, 1}, 2.0);
  CHECK(r.value == 8.0);
  CHECK(r.cycles == 6);
  CHECK(horner_eval({5, 0, 0, 0}, -123.0).value == 5.0);
  CHECK(horner_eval({5, 0, 0, 0}, 0.7).cycles == 6);
}

TEST_CASE("horner_eval agrees with direct power-form evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(-4.0, 4.0);
  std::uniform_real_distribution<double> cs(-16.0, 16.0);
  for (int i = 0; i < 10000; ++i) {
    const std::array<double, 4> c{cs(rng), cs(rng), cs(rng), cs(rng)};
    const double x = xs(rng);
    const long double lx = x;
    const long double direct = c[0] + c[1] * lx + c[2] * lx * lx + c[3] * lx * lx * lx;
    const double scale =
        std::abs(c[0]) + std::abs(c[1] * x) + std::abs(c[2] * x * x) + std::abs(c[3] * x * x * x);
    CHECK(std::abs(horner_eval(c, x).value - static_cast<double>(direct)) <=
          4 * oracle::ulp(scale));
  }
}

TEST_CASE("classical cubic baseline converges at fourth order") {
  const auto f = [](double x) { return std::log1p(x); };
  const double e16 = classical_cubic_interior_error(f, 0.0, 2.0, 1.0 / 16, 4000);
  const double e32 = classical_cubic_interior_error(f, 0.0, 2.0, 1.0 / 32, 4000);
  CHECK(e32 > 0.0);
  CHECK(std::log2(e16 / e32) == doctest::Approx(4.0).epsilon(0.1));
  // Per-interval cubic interpolation: |f''''| h^4 / 24 * max|s(s^2-1)(s-2)| = 9/16.
  CHECK(e32 <= 6.0 / 24.0 * 9.0 / 16.0 * std::pow(1.0 / 32, 4));
  CHECK(classical_cubic_interior_error([](double x) { return x * x * x; }, 0.0, 2.0, 0.25, 500) <=
        1e-13);
}

TEST_CASE("built-in functions and their fourth-derivative maxima") {
  CHECK(builtin_function("ln1p").value(1.0) == std::log(2.0));
  CHECK(builtin_function("sin").value(1.0) == std::sin(1.0));
  CHECK(builtin_function("exp").value(1.0) == std::exp(1.0));
  CHECK_THROWS_AS(builtin_function("cos"), ParseError);
  for (const auto& fn : builtin_functions()) {
    for (auto [a, b] : {std::pair{0.0, 2.0}, std::pair{0.25, 1.75}, std::pair{-0.5, 0.5}}) {
      const double fd = oracle::fourth_derivative_max(fn.value, a, b);
      CHECK(fn.max_abs_fourth_derivative(a, b) == doctest::Approx(fd).epsilon(1e-3));
    }
  }
  CHECK(builtin_function("ln1p").max_abs_fourth_derivative(0.0, 2.0) == 6.0);
  CHECK(builtin_function("sin").max_abs_fourth_derivative(0.0, 2.0) == 1.0);
}
