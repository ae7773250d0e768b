#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "asw/errors.hpp"
#include "asw/padic.hpp"

using namespace asw;

namespace {

K0Element random_k0(const BaseFieldPtr& f, std::mt19937_64& rng, int shift, int prec) {
  std::uniform_int_distribution<long> digit(0, static_cast<long>(f->p()) - 1);
  std::vector<mpz_class> coeffs;
  for (int i = 0; i < f->e0(); ++i) coeffs.emplace_back(digit(rng) + 7 * digit(rng));
  coeffs[0] = coeffs[0] * f->p() + 1;  // leading unit
  return K0Element::from_coefficients(f, shift, coeffs, prec);
}

}  // namespace

TEST_CASE("integer helpers round toward the right side") {
  CHECK(ceil_div(7, 3) == 3);
  CHECK(ceil_div(-7, 3) == -2);
  CHECK(ceil_div(6, 3) == 2);
  CHECK(floor_div(7, 3) == 2);
  CHECK(floor_div(-7, 3) == -3);
  CHECK(floor_div(-6, 3) == -2);
  CHECK(pos_mod(-1, 9) == 8);
  CHECK(pos_mod(19, 9) == 1);
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK_FALSE(is_prime(9));
  CHECK_FALSE(is_prime(1));
  CHECK(prime_power(3, 4) == 81);
  CHECK(p_valuation(3, 54) == 3);
  CHECK(p_valuation(2, 40) == 3);
}

TEST_CASE("rational helper canonicalizes") {
  CHECK(rational(-18, 8) == mpq_class(-9, 4));
  CHECK(rational(-18, 8).get_num() == -9);
  CHECK(rational(6, -3) == -2);
}

TEST_CASE("padic integers: ring operations modulo p^N") {
  const PadicInt a(3, 5, 6), b(3, 7, 4);
  CHECK((a + b).precision() == 4);
  CHECK((a + b).digits() == 12);
  CHECK((a * b).digits() == 35 % 81);
  CHECK((a - b).digits() == mpz_class(81 - 2));
  CHECK((-a + a).valuation() == std::nullopt);
  CHECK(a.is_unit());
  CHECK_FALSE(PadicInt(3, 18, 6).is_unit());
  CHECK(PadicInt(3, 18, 6).valuation() == 2);
  CHECK(a * a.inverse() == PadicInt(3, 1, 6));
  CHECK_THROWS(PadicInt(3, 6, 5).inverse());
}

TEST_CASE("base field: the uniformizer satisfies its Eisenstein relation") {
  for (auto [p, e0] : {std::pair{3u, 6}, std::pair{2u, 4}, std::pair{5u, 3}}) {
    const auto f = make_base_field(p, e0);
    const auto pi = K0Element::monomial(f, 1, 1, 200);
    CHECK(pi.pow(static_cast<unsigned>(e0)).congruent(K0Element::from_integer(f, p, 200)));
    CHECK(K0Element::from_integer(f, p, 200).valuation_or_throw() == e0);
  }
  const auto f = make_base_field(3, 4, 2);
  const auto pi = K0Element::monomial(f, 1, 1, 200);
  CHECK(pi.pow(4).congruent(K0Element::from_integer(f, 6, 200)));
}

TEST_CASE("K0 valuations are additive and ultrametric") {
  const auto f = make_base_field(3, 6);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = static_cast<int>(rng() % 21) - 10;
    const int t = static_cast<int>(rng() % 21) - 10;
    const auto x = random_k0(f, rng, s, s + 80);
    const auto y = random_k0(f, rng, t, t + 80);
    CHECK(x.valuation_or_throw() == s);
    CHECK((x * y).valuation_or_throw() == s + t);
    CHECK((x / y).valuation_or_throw() == s - t);
    if (s != t) CHECK((x + y).valuation_or_throw() == std::min(s, t));
    CHECK(((x + y) * y).congruent(x * y + y * y));
    CHECK(((x * y) / y).congruent(x));
    CHECK((x * x.inverse()).congruent(K0Element::from_integer(f, 1, 60)));
  }
}

TEST_CASE("K0 precision is tracked through arithmetic") {
  const auto f = make_base_field(3, 6);
  const auto x = K0Element::monomial(f, 1, -2, 30);  // v = -2, known to 30
  const auto y = K0Element::monomial(f, 2, 5, 20);   // v = 5, known to 20
  CHECK((x + y).precision() == 20);
  CHECK((x * y).precision() == std::min(-2 + 20, 5 + 30));
  CHECK(x.times_pi_power(4).precision() == 34);
  CHECK(x.times_pi_power(4).valuation_or_throw() == 2);
  CHECK(x.scaled(3).valuation_or_throw() == 4);
  CHECK(x.truncated(10).precision() == 10);
}

TEST_CASE("zero to precision has no valuation") {
  const auto f = make_base_field(3, 6);
  const auto x = K0Element::monomial(f, 1, 2, 40);
  const auto z = x - x;
  CHECK(z.is_zero());
  CHECK_FALSE(z.valuation().has_value());
  CHECK(z.valuation_floor() == z.precision());
  CHECK_THROWS_AS(z.valuation_or_throw(), IndeterminateValuation);
  CHECK_THROWS_AS(x / z, DivisionByIndeterminateZero);
  CHECK_THROWS_AS(z.inverse(), DivisionByIndeterminateZero);
}

TEST_CASE("division by integer units") {
  const auto f = make_base_field(3, 6);
  const auto x = K0Element::monomial(f, 1, -1, 50);
  CHECK((x.divided_by_unit(2) * K0Element::from_integer(f, 2, 60)).congruent(x));
  CHECK_THROWS_AS(x.divided_by_unit(3), std::invalid_argument);
  CHECK((mpz_class(5) * x).congruent(x.scaled(5)));
}

TEST_CASE("negative valuations prime to p lie outside the Artin-Schreier image") {
  const auto f = make_base_field(3, 6);
  CHECK(not_in_artin_schreier_image(K0Element::monomial(f, 1, -1, 100)));
  CHECK(not_in_artin_schreier_image(K0Element::monomial(f, 2, -4, 100)));
  CHECK_THROWS_AS(not_in_artin_schreier_image(K0Element::monomial(f, 1, -3, 100)), Unsupported);
}

TEST_CASE("string form mentions the uniformizer") {
  const auto f = make_base_field(3, 6);
  CHECK(K0Element::monomial(f, 1, -1, 10).to_string().find("pi") != std::string::npos);
}
