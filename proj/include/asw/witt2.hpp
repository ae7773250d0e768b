#pragma once

#include <concepts>
#include <cstdint>
#include <utility>

namespace asw {

/// Coefficient rings for length-2 Witt vectors: commutative rings with
/// multiplication by machine integers.
template <class R>
concept WittCoefficientRing = std::copyable<R> && requires(const R& a, const R& b, std::int64_t n) {
  { a + b } -> std::convertible_to<R>;
  { a - b } -> std::convertible_to<R>;
  { a * b } -> std::convertible_to<R>;
  { -a } -> std::convertible_to<R>;
  { a * n } -> std::convertible_to<R>;
};

template <WittCoefficientRing R>
struct WittVector2 {
  R first;
  R second;
};

namespace witt_detail {

template <WittCoefficientRing R>
R power(const R& x, unsigned n) {
  R result = x;
  for (unsigned i = 1; i < n; ++i) result = result * x;
  return result;
}

/// C(p, i) / p, exact for 0 < i < p.
inline std::int64_t binomial_over_p(unsigned p, unsigned i) {
  std::int64_t c = 1;
  for (unsigned k = 1; k <= i; ++k) c = c * static_cast<std::int64_t>(p - k + 1) / k;
  return c / static_cast<std::int64_t>(p);
}

}  // namespace witt_detail

/// Carry polynomial D(X, Y) = (X^p + Y^p - (X + Y)^p) / p, evaluated through
/// its integral expansion -sum_{i=1}^{p-1} (C(p,i)/p) X^{p-i} Y^i so that no
/// division by p happens in the coefficient ring.
template <WittCoefficientRing R>
R carry_polynomial(unsigned p, const R& x, const R& y) {
  R x_pow = witt_detail::power(x, p - 1);
  R y_pow = y;
  R acc = x_pow * y_pow * -witt_detail::binomial_over_p(p, 1);
  for (unsigned i = 2; i < p; ++i) {
    x_pow = witt_detail::power(x, p - i);
    y_pow = y_pow * y;
    acc = acc - x_pow * y_pow * witt_detail::binomial_over_p(p, i);
  }
  return acc;
}

template <WittCoefficientRing R>
WittVector2<R> witt_add(unsigned p, const WittVector2<R>& a, const WittVector2<R>& b) {
  return {a.first + b.first, a.second + b.second + carry_polynomial(p, a.first, b.first)};
}

template <WittCoefficientRing R>
WittVector2<R> witt_neg(unsigned p, const WittVector2<R>& a) {
  R neg_first = -a.first;
  return {neg_first, -a.second - carry_polynomial(p, a.first, neg_first)};
}

template <WittCoefficientRing R>
WittVector2<R> witt_sub(unsigned p, const WittVector2<R>& a, const WittVector2<R>& b) {
  return witt_add(p, a, witt_neg(p, b));
}

/// Coordinatewise p-th power.
template <WittCoefficientRing R>
WittVector2<R> frobenius(unsigned p, const WittVector2<R>& a) {
  return {witt_detail::power(a.first, p), witt_detail::power(a.second, p)};
}

/// Artin-Schreier operator F - id (Witt subtraction).
template <WittCoefficientRing R>
WittVector2<R> artin_schreier(unsigned p, const WittVector2<R>& a) {
  return witt_sub(p, frobenius(p, a), a);
}

}  // namespace asw
