#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace asw {

/// Integer ceiling division for a positive divisor.
constexpr int ceil_div(int a, int b) {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

/// Integer floor division for a positive divisor.
constexpr int floor_div(int a, int b) {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

/// Least nonnegative residue of a modulo a positive b.
constexpr int pos_mod(int a, int b) { return ((a % b) + b) % b; }

bool is_prime(unsigned n);

/// p^n as a big integer (n >= 0).
mpz_class prime_power(unsigned p, int n);

/// v_p(n) for n != 0.
int p_valuation(unsigned p, const mpz_class& n);

/// num/den in lowest terms with a positive denominator.
inline mpq_class rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

/// An element of Z_p known modulo p^N.
class PadicInt {
 public:
  PadicInt(unsigned p, const mpz_class& value, int precision);

  unsigned prime() const { return p_; }
  const mpz_class& digits() const { return digits_; }
  int precision() const { return precision_; }

  /// v_p of the element; empty when it is zero modulo p^N.
  std::optional<int> valuation() const;
  bool is_unit() const;

  PadicInt operator+(const PadicInt& rhs) const;
  PadicInt operator-(const PadicInt& rhs) const;
  PadicInt operator*(const PadicInt& rhs) const;
  PadicInt operator-() const;

  /// Inverse of a unit, to the same precision.
  PadicInt inverse() const;

  bool operator==(const PadicInt& rhs) const = default;

 private:
  unsigned p_;
  mpz_class digits_;
  int precision_;
};

/// Q_p(pi0) with pi0^e0 = p * unit (Eisenstein).
class BaseField {
 public:
  BaseField(unsigned p, int e0, mpz_class eisenstein_unit = 1);

  unsigned p() const { return p_; }
  int e0() const { return e0_; }
  const mpz_class& eisenstein_unit() const { return unit_; }
  /// p * unit, the value of pi0^e0.
  const mpz_class& pi_power_e0() const { return p_times_unit_; }

  mpz_class prime_power(int n) const { return asw::prime_power(p_, n); }
  int p_valuation(const mpz_class& n) const { return asw::p_valuation(p_, n); }
  /// unit^{-1} modulo p^n.
  mpz_class unit_inverse(int n) const;

  bool operator==(const BaseField& rhs) const {
    return p_ == rhs.p_ && e0_ == rhs.e0_ && unit_ == rhs.unit_;
  }

 private:
  unsigned p_;
  int e0_;
  mpz_class unit_;
  mpz_class p_times_unit_;
};

using BaseFieldPtr = std::shared_ptr<const BaseField>;

BaseFieldPtr make_base_field(unsigned p, int e0, mpz_class eisenstein_unit = 1);

/// An element pi0^shift * sum_i c_i pi0^i of K0, known modulo pi0^precision.
///
/// Coefficient c_i is kept reduced modulo p^{N_i}, where N_i is the number of
/// p-adic digits of c_i that survive below the absolute precision. When the
/// element is determinate the shift equals its valuation, so c_0 is a unit.
class K0Element {
 public:
  K0Element() = default;

  static K0Element zero(BaseFieldPtr field, int precision);
  static K0Element from_integer(BaseFieldPtr field, const mpz_class& n, int precision);
  /// c * pi0^k.
  static K0Element monomial(BaseFieldPtr field, const mpz_class& c, int k, int precision);
  static K0Element from_coefficients(BaseFieldPtr field, int shift,
                                     std::vector<mpz_class> coeffs, int precision);

  const BaseFieldPtr& field() const { return field_; }
  int shift() const { return shift_; }
  const std::vector<mpz_class>& coefficients() const { return coeffs_; }
  /// c_i as a p-adic integer with its own digit precision.
  PadicInt coefficient(int i) const;
  /// Absolute v0-precision: the element is known modulo pi0^precision.
  int precision() const { return precision_; }

  /// Normalized valuation (v0(pi0) = 1); empty when zero to precision.
  std::optional<int> valuation() const;
  /// Valuation, throwing IndeterminateValuation when zero to precision.
  int valuation_or_throw() const;
  /// Valuation when determinate, the precision otherwise: a lower bound for v0.
  int valuation_floor() const;
  bool is_zero() const { return !determinate_; }

  K0Element operator+(const K0Element& rhs) const;
  K0Element operator-(const K0Element& rhs) const;
  K0Element operator*(const K0Element& rhs) const;
  K0Element operator/(const K0Element& rhs) const;
  K0Element operator-() const;
  K0Element& operator+=(const K0Element& rhs) { return *this = *this + rhs; }
  K0Element& operator-=(const K0Element& rhs) { return *this = *this - rhs; }
  K0Element& operator*=(const K0Element& rhs) { return *this = *this * rhs; }

  K0Element scaled(const mpz_class& n) const;
  /// Division by an integer that is a p-adic unit.
  K0Element divided_by_unit(const mpz_class& n) const;
  K0Element times_pi_power(int k) const;
  K0Element pow(unsigned n) const;
  K0Element inverse() const;
  /// Lowers the precision to min(precision, new_precision).
  K0Element truncated(int new_precision) const;

  /// True when a - b is zero to the combined precision.
  bool congruent(const K0Element& rhs) const { return (*this - rhs).is_zero(); }

  std::string to_string() const;

 private:
  K0Element(BaseFieldPtr field, int shift, std::vector<mpz_class> coeffs, int precision);
  void normalize();
  std::vector<mpz_class> coefficients_at_shift(int target_shift) const;
  /// Unit part (shift 0) inverse by Newton iteration.
  K0Element unit_inverse() const;

  BaseFieldPtr field_;
  int shift_ = 0;
  std::vector<mpz_class> coeffs_;
  int precision_ = 0;
  bool determinate_ = false;
};

K0Element operator*(const mpz_class& n, const K0Element& x);

/// Membership guard for a1 not in wp(K0): certifies a in K0 \ wp(K0) from its
/// valuation alone. Requires v0(a) < 0; throws Unsupported when p | v0(a).
bool not_in_artin_schreier_image(const K0Element& a);

}  // namespace asw
