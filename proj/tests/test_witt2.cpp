#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "asw/modint.hpp"
#include "asw/tower.hpp"
#include "asw/witt2.hpp"

using namespace asw;

namespace {

using W = WittVector2<ModInt>;

bool same(const W& a, const W& b) { return a.first == b.first && a.second == b.second; }

std::vector<W> all_vectors(std::int64_t n) {
  std::vector<W> out;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b) out.push_back({ModInt(a, n), ModInt(b, n)});
  return out;
}

/// (x^p + y^p - (x + y)^p) / p over the integers.
std::int64_t carry_integer(int p, std::int64_t x, std::int64_t y) {
  auto pw = [p](std::int64_t v) {
    std::int64_t r = 1;
    for (int i = 0; i < p; ++i) r *= v;
    return r;
  };
  return (pw(x) + pw(y) - pw(x + y)) / p;
}

}  // namespace

static_assert(WittCoefficientRing<ModInt>);
static_assert(WittCoefficientRing<Fp2>);
static_assert(WittCoefficientRing<K2Element>);

TEST_CASE("carry polynomial matches its integer definition") {
  for (int p : {2, 3, 5}) {
    const std::int64_t n = 1'000'003;
    for (std::int64_t x = -6; x <= 6; ++x)
      for (std::int64_t y = -6; y <= 6; ++y) {
        const auto d = carry_polynomial(static_cast<unsigned>(p), ModInt(x, n), ModInt(y, n));
        CHECK(d == ModInt(carry_integer(p, x, y), n));
      }
  }
  CHECK(carry_polynomial(3u, ModInt(1, 1000), ModInt(1, 1000)) == ModInt(-2, 1000));
}

TEST_CASE("Witt addition is associative and commutative on W2(Z/9) and W2(Z/4)") {
  for (auto [p, n] : {std::pair{3u, std::int64_t{9}}, std::pair{2u, std::int64_t{4}}}) {
    const auto all = all_vectors(n);
    const W zero{ModInt(0, n), ModInt(0, n)};
    int failures = 0;
    for (const auto& a : all) {
      if (!same(witt_add(p, a, zero), a)) ++failures;
      if (!same(witt_add(p, a, witt_neg(p, a)), zero)) ++failures;
      for (const auto& b : all) {
        if (!same(witt_add(p, a, b), witt_add(p, b, a))) ++failures;
        const auto ab = witt_add(p, a, b);
        for (const auto& c : all) {
          if (!same(witt_add(p, ab, c), witt_add(p, a, witt_add(p, b, c)))) ++failures;
        }
      }
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("p-fold sum of (1, 0) is congruent to (0, 1) mod p") {
  for (auto [p, n] : {std::pair{3u, std::int64_t{9}}, std::pair{2u, std::int64_t{4}},
                      std::pair{5u, std::int64_t{25}}}) {
    const W one{ModInt(1, n), ModInt(0, n)};
    W sum = one;
    for (unsigned k = 1; k < p; ++k) sum = witt_add(p, sum, one);
    CHECK(sum.first.value() % p == 0);
    CHECK(sum.second.value() % p == 1);
  }
}

TEST_CASE("Frobenius is additive on W2 of a finite field") {
  struct Field {
    unsigned p;
    std::int64_t c0, c1;
  };
  std::mt19937_64 rng(2024);
  for (const Field f : {Field{3, 2, 0}, Field{2, 1, 1}}) {
    const auto p = static_cast<std::int64_t>(f.p);
    std::uniform_int_distribution<std::int64_t> digit(0, p - 1);
    auto draw = [&] { return Fp2(digit(rng), digit(rng), p, f.c0, f.c1); };
    // The field really is degree 2: some element is moved by x -> x^p.
    bool moved = false;
    for (std::int64_t a = 0; a < p; ++a)
      for (std::int64_t b = 0; b < p; ++b) {
        Fp2 x(a, b, p, f.c0, f.c1), y = x;
        for (unsigned k = 1; k < f.p; ++k) y = y * x;
        moved = moved || !(y == x);
      }
    CHECK(moved);
    int failures = 0;
    for (int s = 0; s < 1000; ++s) {
      const WittVector2<Fp2> a{draw(), draw()}, b{draw(), draw()};
      const auto lhs = frobenius(f.p, witt_add(f.p, a, b));
      const auto rhs = witt_add(f.p, frobenius(f.p, a), frobenius(f.p, b));
      if (!(lhs.first == rhs.first && lhs.second == rhs.second)) ++failures;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("Frobenius on W2(Z/p^2) is additive only modulo p") {
  for (auto [p, n] : {std::pair{3u, std::int64_t{9}}, std::pair{2u, std::int64_t{4}}}) {
    const auto all = all_vectors(n);
    int congruence_failures = 0;
    int exact_failures = 0;
    for (const auto& a : all)
      for (const auto& b : all) {
        const auto lhs = frobenius(p, witt_add(p, a, b));
        const auto rhs = witt_add(p, frobenius(p, a), frobenius(p, b));
        if ((lhs.first - rhs.first).value() % p != 0 || (lhs.second - rhs.second).value() % p != 0)
          ++congruence_failures;
        if (!same(lhs, rhs)) ++exact_failures;
      }
    CHECK(congruence_failures == 0);
    CHECK(exact_failures > 0);
  }
}

TEST_CASE("Artin-Schreier operator on (1, 0) over the integers") {
  const std::int64_t n = 1'000'003;
  const W one{ModInt(1, n), ModInt(0, n)};
  const auto r = artin_schreier(3u, one);
  CHECK(r.first.value() == 0);
  CHECK(r.second.value() == 0);
  const W x{ModInt(2, n), ModInt(5, n)};
  const auto rx = artin_schreier(3u, x);
  CHECK(rx.first == ModInt(8 - 2, n));
  // Subtraction is inverse to addition.
  CHECK(same(witt_add(3u, rx, x), frobenius(3u, x)));
}
