#pragma once

#include <cstdint>
#include <stdexcept>

namespace asw {

/// Residue in Z/nZ for small moduli; used as a Witt coefficient ring in tests
/// and sanity checks.
class ModInt {
 public:
  ModInt(std::int64_t value, std::int64_t modulus) : m_(modulus) {
    if (modulus <= 0) throw std::invalid_argument("ModInt: modulus must be positive");
    v_ = ((value % m_) + m_) % m_;
  }

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return m_; }

  ModInt operator+(const ModInt& o) const { return {v_ + o.v_, m_}; }
  ModInt operator-(const ModInt& o) const { return {v_ - o.v_, m_}; }
  ModInt operator*(const ModInt& o) const { return {v_ * o.v_, m_}; }
  ModInt operator*(std::int64_t n) const { return {v_ * (n % m_), m_}; }
  ModInt operator-() const { return {-v_, m_}; }
  bool operator==(const ModInt& o) const = default;

 private:
  std::int64_t v_ = 0;
  std::int64_t m_ = 1;
};

/// Element of F_{p^2} = F_p[t]/(t^2 - c1 t - c0) for an irreducible quadratic,
/// stored as a + b t. A characteristic-p ring where x^p != x in general.
class Fp2 {
 public:
  Fp2(std::int64_t a, std::int64_t b, std::int64_t p, std::int64_t c0, std::int64_t c1)
      : a_(norm(a, p)), b_(norm(b, p)), p_(p), c0_(norm(c0, p)), c1_(norm(c1, p)) {}

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }

  Fp2 operator+(const Fp2& o) const { return make(a_ + o.a_, b_ + o.b_); }
  Fp2 operator-(const Fp2& o) const { return make(a_ - o.a_, b_ - o.b_); }
  Fp2 operator*(const Fp2& o) const {
    const std::int64_t bd = b_ * o.b_ % p_;
    return make(a_ * o.a_ + bd * c0_, a_ * o.b_ + b_ * o.a_ + bd * c1_);
  }
  Fp2 operator*(std::int64_t k) const { return make(a_ * norm(k, p_), b_ * norm(k, p_)); }
  Fp2 operator-() const { return make(-a_, -b_); }
  bool operator==(const Fp2& o) const = default;

 private:
  Fp2 make(std::int64_t a, std::int64_t b) const { return {a, b, p_, c0_, c1_}; }
  static std::int64_t norm(std::int64_t x, std::int64_t p) { return ((x % p) + p) % p; }
  std::int64_t a_, b_, p_, c0_, c1_;
};

}  // namespace asw
