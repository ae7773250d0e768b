#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "asw/errors.hpp"
#include "fixtures.hpp"

using namespace asw;
using fixtures::pi_power;

TEST_CASE("worked example: breaks and relation coefficients") {
  const auto& s = fixtures::worked_example();
  const auto& e = *s.ext;
  CHECK(e.p() == 3);
  CHECK(e.degree() == 9);
  CHECK(e.b1() == 1);
  CHECK(e.m() == 1);
  CHECK(e.b2() == 10);
  CHECK(e.a2().valuation_or_throw() == -4);
  CHECK(e.a2().congruent(pi_power(s.field, -4)));
  CHECK(e.x2_relation(0).congruent(pi_power(s.field, -4)));
  CHECK(e.x2_relation(1).congruent(pi_power(s.field, -2, -1)));
  CHECK(e.x2_relation(2).congruent(pi_power(s.field, -1, -1)));
  CHECK(e.working_precision() == 108);
  CHECK(e.binomial(2, 1) == 2);
  CHECK(e.monomial_valuation(1, 0) == -3);
  CHECK(e.monomial_valuation(0, 1) == -10);
}

TEST_CASE("generators satisfy their Artin-Schreier relations") {
  for (const auto* s : {&fixtures::worked_example(), &fixtures::dyadic_example()}) {
    const auto& ext = s->ext;
    const unsigned p = ext->p();
    const auto x1 = K2Element::x1(ext), x2 = K2Element::x2(ext);
    const auto wp1 = x1.pow(p) - x1 - K2Element::constant(ext, ext->a1());
    CHECK(wp1.is_zero());
    K2Element r = K2Element::zero(ext);
    for (unsigned k = 0; k < p; ++k)
      r += x1.pow(k) * ext->x2_relation(static_cast<int>(k));
    CHECK((x2.pow(p) - x2 - r).is_zero());
  }
}

TEST_CASE("valuations of generators and monomials") {
  const auto& ext = fixtures::worked_example().ext;
  CHECK(K2Element::x1(ext).valuation_or_throw() == -3);
  CHECK(K2Element::y2(ext).valuation_or_throw() == -10);
  CHECK(K2Element::x2(ext).valuation_or_throw() == -12);
  CHECK(K2Element::integer(ext, 3).valuation_or_throw() == 54);
  std::set<int> residues;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) residues.insert(pos_mod(ext->monomial_valuation(i, j), 9));
  CHECK(residues.size() == 9);
}

TEST_CASE("uniformizer and lambda family") {
  const auto& ext = fixtures::worked_example().ext;
  const auto pi2 = uniformizer_k2(ext, 1);
  CHECK(pi2.valuation_or_throw() == 1);
  const auto ex = uniformizer_exponents(*ext, 1);
  CHECK(ex.pi_power == 3);
  CHECK(ex.x1_power == 2);
  CHECK(ex.y2_power == 2);
  for (int t = -20; t <= 40; ++t) {
    CHECK(lambda_element(ext, t).valuation_or_throw() == t);
    const auto shifted = lambda_element(ext, t + 9) - lambda_element(ext, t).times_pi_power(1);
    CHECK(shifted.is_zero());
  }
}

TEST_CASE("valuation is multiplicative on random products") {
  const auto& ext = fixtures::worked_example().ext;
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int s = static_cast<int>(rng() % 30) - 15;
    const int t = static_cast<int>(rng() % 30) - 15;
    const auto x = random_element(ext, rng, s);
    const auto y = random_element(ext, rng, t);
    CHECK(x.valuation_or_throw() == s);
    CHECK((x * y).valuation_or_throw() == s + t);
    CHECK(((x + y) * y - x * y - y * y).is_zero());
  }
}

TEST_CASE("y-basis round trip") {
  const auto& ext = fixtures::worked_example().ext;
  std::mt19937_64 rng(11);
  const auto x = random_element(ext, rng, 3);
  const auto back = K2Element::from_y_basis(ext, x.to_y_basis());
  CHECK((back - x).is_zero());
  const auto y = K2Element::y_monomial(ext, pi_power(ext->base(), 2), 1, 1);
  CHECK(y.valuation_or_throw() == 18 - 3 - 10);
}

TEST_CASE("subfield membership") {
  const auto& ext = fixtures::worked_example().ext;
  CHECK(K2Element::integer(ext, 5).in_k0());
  CHECK(K2Element::x1(ext).in_k1());
  CHECK_FALSE(K2Element::x1(ext).in_k0());
  CHECK_FALSE(K2Element::x2(ext).in_k1());
}

TEST_CASE("Newton inverse and Hensel lifting") {
  const auto& ext = fixtures::worked_example().ext;
  const auto one = K2Element::integer(ext, 1);
  const auto u = one + K2Element::x1(ext).times_pi_power(1) * 3L;
  const auto inv = newton_inverse(u, one);
  CHECK((u * inv - one).valuation_floor() >= ext->working_precision());

  // Root of X^p - X = a1 near x1 + 1: the lifted conjugate of x1.
  HenselTrace trace;
  const auto c = K2Element::constant(ext, ext->a1());
  const auto root = hensel_lift(c, K2Element::x1(ext) + one, 100, &trace);
  CHECK((root.pow(3) - root - c).valuation_floor() >= 100);
  CHECK(trace.residual_valuations.front() > 0);
  CHECK((root - K2Element::x1(ext) - one).valuation_or_throw() == 48);

  CHECK_THROWS_AS(hensel_lift(c, one, 100), NoConvergence);
}

TEST_CASE("trace requires a rational sum") {
  const auto& ext = fixtures::worked_example().ext;
  const std::vector<K2Element> lone{K2Element::x1(ext)};
  CHECK_THROWS_AS(trace_k2_k0(lone), NotRational);
  const std::vector<K2Element> consts(9, K2Element::integer(ext, 2));
  CHECK(trace_k2_k0(consts).congruent(K0Element::from_integer(ext->base(), 18, 40)));
  CHECK_THROWS_AS(trace_k2_k0(std::span<const K2Element>{}), std::invalid_argument);
}

TEST_CASE("invalid parameter choices are rejected") {
  const auto f = make_base_field(3, 6);
  CHECK_THROWS_AS(Extension::create(f, pi_power(f, -1), pi_power(f, 0)), ValidationFailed);
  CHECK_THROWS_AS(Extension::create(f, pi_power(f, -2), pi_power(f, -1)), ValidationFailed);
  CHECK_NOTHROW(Extension::create(f, pi_power(f, -1), pi_power(f, -2)));
}
