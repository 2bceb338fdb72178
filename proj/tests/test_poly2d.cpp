#include <doctest.h>

#include <cmath>
#include <random>

#include "markov/poly2d.hpp"
#include "markov/precision.hpp"
#include "support.hpp"

using namespace markov;
using testing_support::random_poly;

namespace {
const auto X = BivariatePoly::x();
const auto Y = BivariatePoly::y();
const auto ONE = BivariatePoly::constant(1.0);

double scaled_diff(const BivariatePoly& a, const BivariatePoly& b) {
  return max_coeff_difference(a, b) / std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
}
}  // namespace

TEST_CASE("zero polynomial has no degree") {
  BivariatePoly z;
  CHECK(z.is_zero());
  CHECK_FALSE(z.total_degree().has_value());
  CHECK(z.degree_or_zero() == 0);
  CHECK(ONE.total_degree() == 0);
  CHECK((X * Y * Y).total_degree() == 3);
  CHECK((X - X).is_zero());
  CHECK_FALSE((X - X).total_degree().has_value());
}

TEST_CASE("multiply examples") {
  CHECK(max_coeff_difference(multiply(X + Y, X - Y), X * X - Y * Y) == 0.0);
  const auto p = X * X * 3.0 - Y + ONE * 0.5;
  CHECK(max_coeff_difference(multiply(ONE, p), p) == 0.0);
  // (v - u)^2 in variables (u, v) = (x, y)
  const auto w = Y - X;
  CHECK(max_coeff_difference(multiply(w, w), X * X - 2.0 * X * Y + Y * Y) == 0.0);
}

TEST_CASE("partial derivatives") {
  const auto p = X * X * Y * 3.0 + Y * Y * Y - X;
  CHECK(max_coeff_difference(partial(p, Axis::x), X * Y * 6.0 - ONE) == 0.0);
  CHECK(max_coeff_difference(partial(p, Axis::y), X * X * 3.0 + Y * Y * 3.0) == 0.0);
  CHECK(partial(ONE, Axis::x).is_zero());
}

TEST_CASE("evaluation") {
  const auto p = X * X * Y - Y * 2.0 + ONE * 0.25;
  CHECK(p.eval(1.5, -2.0) == doctest::Approx(1.5 * 1.5 * -2.0 + 4.0 + 0.25));
}

TEST_CASE("pullback examples") {
  CHECK(max_coeff_difference(pullback_symmetric(X), X + Y) == 0.0);  // u + v
  CHECK(max_coeff_difference(pullback_symmetric(Y), X * Y) == 0.0);  // uv
  const auto cusp = X * X - Y * 4.0;
  CHECK(max_coeff_difference(pullback_symmetric(cusp), multiply(Y - X, Y - X)) == 0.0);
}

TEST_CASE("pullback derivative examples") {
  const auto w = Y - X;
  CHECK(max_coeff_difference(pullback_derivative_y(Y), w) == 0.0);
  CHECK(pullback_derivative_y(X).is_zero());
  CHECK(max_coeff_difference(pullback_derivative_y(Y * Y), multiply(w, X * Y * 2.0)) < 1e-15);
  CHECK(max_coeff_difference(pullback_derivative_x(X), w) == 0.0);
  CHECK(pullback_derivative_x(Y).is_zero());
  CHECK(max_coeff_difference(pullback_derivative_x(X * X), multiply(w, (X + Y) * 2.0)) < 1e-15);
}

TEST_CASE("pullback evaluates P at (u+v, uv)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::uniform_int_distribution<int> deg(0, 8);
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const auto p = random_poly(rng, deg(rng));
    const auto q = pullback_symmetric(p);
    CHECK(q.degree_or_zero() <= 2 * p.degree_or_zero());
    for (int t = 0; t < 50; ++t) {
      const double u = d(rng), v = d(rng);
      const double ref = p.eval(u + v, u * v);
      worst = std::max(worst, std::abs(q.eval(u, v) - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("derivative identities hold on random polynomials") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> deg(0, 8);
  const auto w = Y - X;
  for (int s = 0; s < 200; ++s) {
    const auto p = random_poly(rng, deg(rng));
    CHECK(scaled_diff(pullback_derivative_y(p), multiply(w, pullback_symmetric(partial(p, Axis::y)))) <= 1e-12);
    CHECK(scaled_diff(pullback_derivative_x(p), multiply(w, pullback_symmetric(partial(p, Axis::x)))) <= 1e-12);
  }
}

TEST_CASE("product rule") {
  std::mt19937_64 rng(13);
  for (int s = 0; s < 50; ++s) {
    const auto p = random_poly(rng, 5), q = random_poly(rng, 4);
    for (const auto axis : {Axis::x, Axis::y}) {
      const auto lhs = partial(multiply(p, q), axis);
      const auto rhs = multiply(partial(p, axis), q) + multiply(p, partial(q, axis));
      CHECK(scaled_diff(lhs, rhs) <= 1e-12);
    }
  }
}

TEST_CASE("wide carrier") {
  using WP = BasicBivariatePoly<Wide>;
  const auto p = WP::x() * WP::y() - WP::constant(Wide(1) / 3);
  CHECK(static_cast<double>(p.eval<Wide>(Wide(2), Wide(3))) == doctest::Approx(6.0 - 1.0 / 3.0));
  CHECK(max_coeff_difference(p.cast<double>(), X * Y - ONE * (1.0 / 3.0)) < 1e-16);
}
