#pragma once

#include <climits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "asw/padic.hpp"

namespace asw {

/// v2-precision reported for elements with no inexact coefficient.
inline constexpr int kExactPrecision = INT_MAX / 4;

/// Precision knobs. `working` is the v2-precision that computed Galois images
/// must reach; `coefficient` is the relative v0-precision given to the input
/// constants a1 and mu (0 picks a default large enough for `working`).
struct PrecisionConfig {
  int working = 0;
  int coefficient = 0;
};

/// K0(x1, x2) with wp(x1, x2) = (a1, a2), a2 = mu^p a1.
///
/// Built through Extension::create, which validates both parameter choices.
class Extension {
 public:
  static std::shared_ptr<const Extension> create(BaseFieldPtr base, const K0Element& a1,
                                                 const K0Element& mu,
                                                 PrecisionConfig precision = {});

  const BaseFieldPtr& base() const { return base_; }
  unsigned p() const { return base_->p(); }
  int e0() const { return base_->e0(); }
  int degree() const { return static_cast<int>(p() * p()); }

  const K0Element& a1() const { return a1_; }
  const K0Element& mu() const { return mu_; }
  const K0Element& a2() const { return a2_; }
  int b1() const { return b1_; }
  int m() const { return m_; }
  int b2() const { return b2_; }

  /// v2-precision targeted by Galois computations.
  int working_precision() const { return working_precision_; }
  /// Relative v0-precision of the input constants.
  int coefficient_precision() const { return coefficient_precision_; }

  /// Coefficient of x1^k in R(x1) = a2 + D(x1, a1), so x2^p = x2 + R(x1).
  const K0Element& x2_relation(int k) const { return x2_relation_[static_cast<std::size_t>(k)]; }
  /// mu^k for 0 <= k < p.
  const K0Element& mu_power(int k) const { return mu_powers_[static_cast<std::size_t>(k)]; }
  /// Binomial coefficient C(n, k) for 0 <= k <= n < p.
  long binomial(int n, int k) const;

  /// v2(x1^i y2^j) = -i p b1 - j b2.
  int monomial_valuation(int i, int j) const;

 private:
  Extension() = default;

  BaseFieldPtr base_;
  K0Element a1_, mu_, a2_;
  int b1_ = 0, m_ = 0, b2_ = 0;
  int working_precision_ = 0;
  int coefficient_precision_ = 0;
  std::vector<K0Element> x2_relation_;
  std::vector<K0Element> mu_powers_;
};

using ExtensionPtr = std::shared_ptr<const Extension>;

/// Coefficient slot; empty means an exact zero.
using Coeff = std::optional<K0Element>;

/// An element sum c_ij x1^i x2^j of K2, 0 <= i, j < p.
class K2Element {
 public:
  K2Element() = default;
  K2Element(ExtensionPtr ext, std::vector<Coeff> coeffs);

  static K2Element zero(ExtensionPtr ext);
  static K2Element constant(ExtensionPtr ext, const K0Element& c);
  static K2Element integer(ExtensionPtr ext, long n);
  static K2Element x1(ExtensionPtr ext);
  static K2Element x2(ExtensionPtr ext);
  /// y2 = x2 - mu x1.
  static K2Element y2(ExtensionPtr ext);
  /// Element with the given coefficients in the basis x1^i y2^j.
  static K2Element from_y_basis(ExtensionPtr ext, std::vector<Coeff> coeffs);
  /// c * x1^i * y2^j.
  static K2Element y_monomial(ExtensionPtr ext, const K0Element& c, int i, int j);

  const ExtensionPtr& extension() const { return ext_; }
  const Coeff& coeff(int i, int j) const { return coeffs_[index(i, j)]; }
  const std::vector<Coeff>& coefficients() const { return coeffs_; }
  std::vector<Coeff> to_y_basis() const;

  /// Normalized valuation v2; empty when zero to precision.
  std::optional<int> valuation() const;
  int valuation_or_throw() const;
  /// Valuation when determinate, the precision otherwise.
  int valuation_floor() const;
  /// Absolute v2-precision: the element is known modulo M2^precision.
  int precision() const;
  bool is_zero() const { return !valuation().has_value(); }

  /// True when no x2 term is present (element of K1).
  bool in_k1() const;
  /// True when only the constant term is present (element of K0).
  bool in_k0() const;

  K2Element operator+(const K2Element& rhs) const;
  K2Element operator-(const K2Element& rhs) const;
  K2Element operator*(const K2Element& rhs) const;
  K2Element operator-() const;
  K2Element operator*(const K0Element& c) const;
  K2Element operator*(long n) const;
  K2Element& operator+=(const K2Element& rhs) { return *this = *this + rhs; }
  K2Element& operator-=(const K2Element& rhs) { return *this = *this - rhs; }
  K2Element pow(unsigned n) const;
  K2Element times_pi_power(int k) const;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * ext_->p() + j; }

  ExtensionPtr ext_;
  std::vector<Coeff> coeffs_;
};

inline K2Element operator*(const K0Element& c, const K2Element& x) { return x * c; }

/// Monomial pi0^k x1^i y2^j of valuation r, with 0 <= i, j < p solving
/// b1 (i p + j) = -r mod p^2.
K2Element uniformizer_k2(const ExtensionPtr& ext, int r);

/// Exponents (k, i, j) of uniformizer_k2 for the residue r.
struct MonomialExponents {
  int pi_power;
  int x1_power;
  int y2_power;
};
MonomialExponents uniformizer_exponents(const Extension& ext, int r);

/// Element of valuation t: pi0^((t - v2(m_r)) / p^2) m_r with m_r the
/// uniformizer_k2 monomial of the residue of t.
K2Element lambda_element(const ExtensionPtr& ext, int t);

/// Newton iteration for the inverse of u, started from y0 with u y0 = 1 mod M2.
K2Element newton_inverse(const K2Element& u, const K2Element& y0);

struct HenselTrace {
  /// v2 of the residual f(t) after each step (the first entry is f(t0)).
  std::vector<int> residual_valuations;
  int steps = 0;
};

/// Root of f(X) = X^p - X - c near t0, refined by Newton iteration until
/// f(t) vanishes to `target` v2-precision.
K2Element hensel_lift(const K2Element& c, const K2Element& t0, int target,
                      HenselTrace* trace = nullptr);

/// Sum of the given conjugates, checked to lie in K0.
K0Element trace_k2_k0(std::span<const K2Element> conjugates);

}  // namespace asw
