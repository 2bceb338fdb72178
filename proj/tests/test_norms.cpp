#include <doctest.h>

#include <cmath>

#include "markov/classical.hpp"
#include "markov/errors.hpp"
#include "markov/norms.hpp"
#include "markov/oracles.hpp"

using namespace markov;

namespace {
const auto X = BivariatePoly::x();
const auto Y = BivariatePoly::y();
const auto ONE = BivariatePoly::constant(1.0);
const NormSpec K2{NormOrder::finite(2.0), Domain::koornwinder(), true};
const NormSpec Kinf{NormOrder::sup(), Domain::koornwinder(), true};
const NormSpec S2{NormOrder::finite(2.0), Domain::simplex_weighted(), true};

// Same integral as wn_1d_integral, from uniform refinement after x = t^l.
double wn_reference(int n, double alpha, double p, double beta, int l, double rel_tol = 1e-12) {
  auto f = [=](double t) {
    return std::pow(std::abs(oracle::jacobi_explicit(n, alpha, alpha, std::pow(t, l))), p) * std::pow(1.0 - t, beta) *
           l * std::pow(t, l - 1);
  };
  return oracle::refine_until_stable(f, 0.0, 1.0, rel_tol);
}
}  // namespace

TEST_CASE("norm order parsing") {
  CHECK(NormOrder::parse("inf").is_sup());
  CHECK(NormOrder::parse("sup").is_sup());
  CHECK(NormOrder::parse("2").p() == 2.0);
  CHECK(NormOrder::parse("2").is_even_integer());
  CHECK_FALSE(NormOrder::parse("3").is_even_integer());
  CHECK_FALSE(NormOrder::parse("2.5").is_even_integer());
  CHECK_THROWS_AS(NormOrder::finite(0.5), DomainError);
  CHECK_THROWS_AS(NormOrder::parse("0.99"), DomainError);
  CHECK_THROWS_AS(NormOrder::parse("abc"), DomainError);
}

TEST_CASE("lp_norm examples") {
  CHECK(lp_norm(ONE, K2) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-14));
  CHECK(lp_norm(X, Kinf) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lp_norm(ONE, S2) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-14));
  CHECK(lp_norm(X, K2) == doctest::Approx(std::sqrt(8.0 / 15.0)).epsilon(1e-14));
  CHECK(lp_norm(ONE, {NormOrder::finite(2.0), Domain::delta_l(1), true}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // weighted = false on the simplex: plain area 2
  CHECK(lp_norm(ONE, {NormOrder::finite(2.0), Domain::simplex_weighted(), false}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("norms of higher even order and of odd order") {
  const auto p = X * Y - X * 0.5 + ONE * 0.25;
  const double exact4 = std::pow(oracle::integrate_exact(multiply(multiply(p, p), multiply(p, p)), Domain::koornwinder()), 0.25);
  CHECK(lp_norm(p, {NormOrder::finite(4.0), Domain::koornwinder(), true}) == doctest::Approx(exact4).epsilon(1e-13));
  // p = 1 on a sign-definite polynomial equals the exact integral
  const auto q = X * X + ONE;
  const double exact1 = oracle::integrate_exact(q, Domain::koornwinder());
  CHECK(lp_norm(q, {NormOrder::finite(1.0), Domain::koornwinder(), true}) == doctest::Approx(exact1).epsilon(1e-10));
  // |x| on Omega, p = 1: 2 int_0^2 x (x^2/4 - x + 1) dx = 2/3. The kink of |x|
  // cuts across panels, so the composite rule is only accurate to ~1e-5 here.
  CHECK(lp_norm(X, {NormOrder::finite(1.0), Domain::koornwinder(), true}) == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("even-order norms are stable under extra exactness") {
  const auto p = X * X * Y * Y - X * Y * 3.0 + Y * 0.5 - ONE;
  for (const auto& spec : {K2, S2, NormSpec{NormOrder::finite(4.0), Domain::delta_l(3), true}}) {
    NormSettings more;
    more.extra_exactness = 8;
    const double a = lp_norm(p, spec), b = lp_norm(p, spec, more);
    CHECK(std::abs(a - b) <= 1e-12 * b);
  }
}

TEST_CASE("markov ratio examples") {
  CHECK(markov_ratio(ONE * 3.0, Axis::x, K2) == 0.0);
  CHECK(markov_ratio(ONE, Axis::y, Kinf) == 0.0);
  CHECK(markov_ratio(X, Axis::x, K2) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-13));
  CHECK_THROWS_AS(markov_ratio(BivariatePoly{}, Axis::x, K2), DomainError);
  for (int k = 1; k <= 8; ++k) {
    // grid sup of P_k is a lower bound on its norm, so the closed-form cusp ratio bounds k^4/4 from above
    const auto fam = ExtremalFamily::pk(k);
    const double sup = lp_norm(build_Pk(k), Kinf);
    CHECK(sup <= k * (1.0 + 1e-9));
    CHECK(fam.cusp_derivative() / sup >= std::pow(k, 4) / 4.0 * (1.0 - 1e-9));
    CHECK(markov_ratio(build_Pk(k), Axis::y, Kinf) >= std::abs(partial(build_Pk(k), Axis::y).eval(-2.0, 1.0)) / sup * (1 - 1e-9));
  }
}

TEST_CASE("closed-form evaluator norms") {
  const auto fam = ExtremalFamily::pk(3);
  const double a = lp_norm([&](double x, double y) { return fam.value(x, y); }, fam.degree(), Kinf);
  CHECK(a == doctest::Approx(lp_norm(build_Pk(3), Kinf)).epsilon(1e-12));
}

TEST_CASE("wn_1d_integral examples") {
  CHECK(wn_1d_integral(0, 3.0, 2.0, 1.0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(wn_1d_integral(0, 3.0, 2.0, 3.0, 1) == doctest::Approx(0.25).epsilon(1e-14));
  const double pinned = wn_1d_integral(6, 14.0, 2.0, 3.0, 3);
  CHECK(pinned == doctest::Approx(wn_reference(6, 14.0, 2.0, 3.0, 3)).epsilon(1e-8));
  CHECK(pinned == doctest::Approx(4307.102891243088).epsilon(1e-10));
}

TEST_CASE("wn_1d_integral agrees with uniform refinement for non-polynomial integrands") {
  for (const int n : {3, 8, 15})
    for (const double p : {1.0, 2.0, 3.0, 2.5})
      for (const int l : {1, 3}) {
        const double beta = (p + 1.0) * l;
        const double got = wn_1d_integral(n, 14.0, p, beta, l);
        CHECK(got == doctest::Approx(wn_reference(n, 14.0, p, beta, l, 1e-9)).epsilon(1e-7));
      }
}

TEST_CASE("wn_ratio examples") {
  CHECK(wn_ratio(0, 5.0, 1, 2.0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-13));
  CHECK(wn_ratio(0, 5.0, 1, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK_THROWS_AS(wn_ratio(3, 14.0, 2, 2.0), DomainError);
}

TEST_CASE("wn_ratio matches the two-dimensional path for l = 1") {
  const NormSpec d1{NormOrder::finite(2.0), Domain::delta_l(1), true};
  for (int n = 0; n <= 10; ++n) {
    const auto w = build_Wn(n, 14.0);
    const double two_d = markov_ratio(w, Axis::y, d1);
    CHECK(wn_ratio(n, 14.0, 1, 2.0) == doctest::Approx(two_d).epsilon(1e-6));
  }
}

TEST_CASE("jacobi zeros") {
  for (const int n : {1, 2, 7, 20, 41}) {
    const auto z = jacobi_zeros_positive(n, 14.0);
    CHECK(z.size() == static_cast<std::size_t>(n / 2));
    for (std::size_t i = 0; i < z.size(); ++i) {
      CHECK(z[i] > 0.0);
      CHECK(z[i] < 1.0);
      if (i) CHECK(z[i] > z[i - 1]);
      const double scale = std::abs(jacobi_P(n, 14.0, 14.0, 1.0));
      CHECK(std::abs(jacobi_P(n, 14.0, 14.0, z[i])) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("bernoulli sandwich") {
  for (const int l : {1, 3, 5})
    for (int i = 0; i < 1000; ++i) {
      const double x = i / 999.0;
      const auto b = bernoulli_bounds(x, l);
      CHECK(b.lower <= b.middle * (1.0 + 1e-15));
      CHECK(b.middle <= b.upper * (1.0 + 1e-15));
    }
  CHECK_THROWS_AS(bernoulli_bounds(0.5, 0), DomainError);
}

TEST_CASE("norms do not depend on the worker count") {
  const auto fam = ExtremalFamily::qk(9);
  auto f = [&](double x, double y) { return fam.value(x, y); };
  NormSettings one, many;
  many.threads = 8;
  for (const auto& spec : {Kinf, K2, NormSpec{NormOrder::finite(3.0), Domain::koornwinder(), true}})
    CHECK(lp_norm(f, fam.degree(), spec, one) == lp_norm(f, fam.degree(), spec, many));
}
