#include "asw/padic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "asw/errors.hpp"

namespace asw {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

mpz_class prime_power(unsigned p, int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, n > 0 ? static_cast<unsigned long>(n) : 0UL);
  return r;
}

int p_valuation(unsigned p, const mpz_class& n) {
  if (n == 0) throw std::invalid_argument("p_valuation of zero");
  mpz_class m = n;
  int v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

namespace {

mpz_class reduce_mod(const mpz_class& c, const mpz_class& modulus) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

}  // namespace

// ---------------------------------------------------------------- PadicInt

PadicInt::PadicInt(unsigned p, const mpz_class& value, int precision)
    : p_(p), precision_(std::max(precision, 0)) {
  digits_ = reduce_mod(value, prime_power(p_, precision_));
}

std::optional<int> PadicInt::valuation() const {
  if (digits_ == 0) return std::nullopt;
  return p_valuation(p_, digits_);
}

bool PadicInt::is_unit() const {
  auto v = valuation();
  return v && *v == 0;
}

PadicInt PadicInt::operator+(const PadicInt& rhs) const {
  return {p_, digits_ + rhs.digits_, std::min(precision_, rhs.precision_)};
}

PadicInt PadicInt::operator-(const PadicInt& rhs) const {
  return {p_, digits_ - rhs.digits_, std::min(precision_, rhs.precision_)};
}

PadicInt PadicInt::operator*(const PadicInt& rhs) const {
  int lhs_v = valuation().value_or(precision_);
  int rhs_v = rhs.valuation().value_or(rhs.precision_);
  return {p_, digits_ * rhs.digits_, std::min(lhs_v + rhs.precision_, rhs_v + precision_)};
}

PadicInt PadicInt::operator-() const { return {p_, -digits_, precision_}; }

PadicInt PadicInt::inverse() const {
  if (!is_unit()) throw DivisionByIndeterminateZero("PadicInt::inverse of a non-unit");
  mpz_class modulus = prime_power(p_, precision_);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), digits_.get_mpz_t(), modulus.get_mpz_t());
  return {p_, inv, precision_};
}

// ---------------------------------------------------------------- BaseField

BaseField::BaseField(unsigned p, int e0, mpz_class eisenstein_unit)
    : p_(p), e0_(e0), unit_(std::move(eisenstein_unit)) {
  if (!is_prime(p_)) throw std::invalid_argument("BaseField: p must be prime");
  if (e0_ < 1) throw std::invalid_argument("BaseField: e0 must be positive");
  if (unit_ == 0 || mpz_divisible_ui_p(unit_.get_mpz_t(), p_)) {
    throw std::invalid_argument("BaseField: Eisenstein unit must be a p-adic unit");
  }
  p_times_unit_ = unit_ * p_;
}

mpz_class BaseField::unit_inverse(int n) const {
  mpz_class modulus = prime_power(n);
  if (unit_ == 1 || modulus == 1) return 1;
  mpz_class inv;
  mpz_class u = reduce_mod(unit_, modulus);
  mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t());
  return inv;
}

BaseFieldPtr make_base_field(unsigned p, int e0, mpz_class eisenstein_unit) {
  return std::make_shared<const BaseField>(p, e0, std::move(eisenstein_unit));
}

// ---------------------------------------------------------------- K0Element

K0Element::K0Element(BaseFieldPtr field, int shift, std::vector<mpz_class> coeffs,
                     int precision)
    : field_(std::move(field)), shift_(shift), coeffs_(std::move(coeffs)), precision_(precision) {
  coeffs_.resize(static_cast<std::size_t>(field_->e0()));
  normalize();
}

K0Element K0Element::zero(BaseFieldPtr field, int precision) {
  std::vector<mpz_class> c(static_cast<std::size_t>(field->e0()));
  return {std::move(field), 0, std::move(c), precision};
}

K0Element K0Element::from_integer(BaseFieldPtr field, const mpz_class& n, int precision) {
  return monomial(std::move(field), n, 0, precision);
}

K0Element K0Element::monomial(BaseFieldPtr field, const mpz_class& c, int k, int precision) {
  std::vector<mpz_class> coeffs(static_cast<std::size_t>(field->e0()));
  coeffs[0] = c;
  return {std::move(field), k, std::move(coeffs), precision};
}

K0Element K0Element::from_coefficients(BaseFieldPtr field, int shift,
                                       std::vector<mpz_class> coeffs, int precision) {
  if (coeffs.size() > static_cast<std::size_t>(field->e0())) {
    throw std::invalid_argument("K0Element: more than e0 coefficients");
  }
  return {std::move(field), shift, std::move(coeffs), precision};
}

PadicInt K0Element::coefficient(int i) const {
  const int e0 = field_->e0();
  int digits = std::max(0, ceil_div(precision_ - shift_ - i, e0));
  return {field_->p(), coeffs_[static_cast<std::size_t>(i)], digits};
}

void K0Element::normalize() {
  const int e0 = field_->e0();
  const unsigned p = field_->p();
  auto reduce_all = [&] {
    for (int i = 0; i < e0; ++i) {
      int digits = ceil_div(precision_ - shift_ - i, e0);
      auto& c = coeffs_[static_cast<std::size_t>(i)];
      if (digits <= 0) {
        c = 0;
      } else {
        c = reduce_mod(c, prime_power(p, digits));
      }
    }
  };
  reduce_all();

  int v = 0;
  bool found = false;
  for (int i = 0; i < e0; ++i) {
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    int vi = i + e0 * asw::p_valuation(p, c);
    if (!found || vi < v) v = vi;
    found = true;
  }
  determinate_ = found;
  if (!found) {
    shift_ = 0;
    return;
  }
  if (v == 0) return;

  // Divide the polynomial part by pi0^v = pi0^r * (p u)^q.
  const int q = v / e0;
  const int r = v % e0;
  const int max_digits = std::max(1, ceil_div(precision_ - shift_, e0)) + 1;
  const mpz_class u_inv = field_->unit_inverse(max_digits);
  std::vector<mpz_class> out(static_cast<std::size_t>(e0));
  for (int i = 0; i < e0; ++i) {
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (i >= r) {
      out[static_cast<std::size_t>(i - r)] = c;
    } else {
      mpz_class d;
      mpz_divexact_ui(d.get_mpz_t(), c.get_mpz_t(), p);
      out[static_cast<std::size_t>(i - r + e0)] = d * u_inv;
    }
  }
  if (q > 0) {
    mpz_class pq = prime_power(p, q);
    mpz_class uq = 1;
    for (int k = 0; k < q; ++k) uq *= u_inv;
    for (auto& c : out) {
      if (c == 0) continue;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pq.get_mpz_t());
      c *= uq;
    }
  }
  coeffs_ = std::move(out);
  shift_ += v;
  reduce_all();
}

std::optional<int> K0Element::valuation() const {
  if (!determinate_) return std::nullopt;
  return shift_;
}

int K0Element::valuation_or_throw() const {
  if (!determinate_) {
    throw IndeterminateValuation("K0 element is zero modulo pi0^" + std::to_string(precision_));
  }
  return shift_;
}

int K0Element::valuation_floor() const { return determinate_ ? shift_ : precision_; }

std::vector<mpz_class> K0Element::coefficients_at_shift(int target_shift) const {
  const int e0 = field_->e0();
  const int delta = shift_ - target_shift;
  if (delta == 0) return coeffs_;
  // Multiply the polynomial part by pi0^delta, delta > 0.
  const int q = delta / e0;
  const int r = delta % e0;
  mpz_class factor = 1;
  for (int k = 0; k < q; ++k) factor *= field_->pi_power_e0();
  std::vector<mpz_class> out(static_cast<std::size_t>(e0));
  for (int i = 0; i < e0; ++i) {
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (i + r < e0) {
      out[static_cast<std::size_t>(i + r)] = c * factor;
    } else {
      out[static_cast<std::size_t>(i + r - e0)] = c * factor * field_->pi_power_e0();
    }
  }
  return out;
}

K0Element K0Element::operator+(const K0Element& rhs) const {
  const int prec = std::min(precision_, rhs.precision_);
  if (!rhs.determinate_ || rhs.shift_ >= prec) return truncated(prec);
  if (!determinate_ || shift_ >= prec) return rhs.truncated(prec);
  const int s = std::min(shift_, rhs.shift_);
  auto a = coefficients_at_shift(s);
  auto b = rhs.coefficients_at_shift(s);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return {field_, s, std::move(a), prec};
}

K0Element K0Element::operator-() const {
  auto c = coeffs_;
  for (auto& x : c) x = -x;
  return {field_, shift_, std::move(c), precision_};
}

K0Element K0Element::operator-(const K0Element& rhs) const { return *this + (-rhs); }

K0Element K0Element::operator*(const K0Element& rhs) const {
  const int prec = std::min(valuation_floor() + rhs.precision_, rhs.valuation_floor() + precision_);
  if (!determinate_ || !rhs.determinate_) return zero(field_, prec);
  const int e0 = field_->e0();
  std::vector<mpz_class> prod(static_cast<std::size_t>(2 * e0 - 1));
  for (int i = 0; i < e0; ++i) {
    const auto& a = coeffs_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    for (int j = 0; j < e0; ++j) {
      const auto& b = rhs.coeffs_[static_cast<std::size_t>(j)];
      if (b == 0) continue;
      mpz_addmul(prod[static_cast<std::size_t>(i + j)].get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    }
  }
  for (int k = 2 * e0 - 2; k >= e0; --k) {
    auto& hi = prod[static_cast<std::size_t>(k)];
    if (hi == 0) continue;
    prod[static_cast<std::size_t>(k - e0)] += hi * field_->pi_power_e0();
  }
  prod.resize(static_cast<std::size_t>(e0));
  return {field_, shift_ + rhs.shift_, std::move(prod), prec};
}

K0Element K0Element::unit_inverse() const {
  // this = pi0^shift * w with w a unit; invert w to relative precision.
  const int rel = precision_ - shift_;
  K0Element w(field_, 0, coeffs_, rel);
  const mpz_class modulus = field_->prime_power(std::max(1, ceil_div(rel, field_->e0())));
  mpz_class c0_inv;
  mpz_class c0 = reduce_mod(coeffs_[0], modulus);
  mpz_invert(c0_inv.get_mpz_t(), c0.get_mpz_t(), modulus.get_mpz_t());
  K0Element z = monomial(field_, c0_inv, 0, rel);
  const K0Element two = from_integer(field_, 2, rel);
  // Error 1 - w z has valuation >= 1 and squares each step.
  for (int correct = 1; correct < rel; correct *= 2) {
    z = z * (two - w * z);
    z = K0Element(field_, 0, z.coeffs_, rel);
  }
  return z;
}

K0Element K0Element::inverse() const {
  if (!determinate_) {
    throw DivisionByIndeterminateZero("division by an element that is zero modulo pi0^" +
                                      std::to_string(precision_));
  }
  K0Element z = unit_inverse();
  // rel precision is unchanged; absolute precision shifts by -shift.
  return {field_, -shift_, z.coeffs_, -shift_ + (precision_ - shift_)};
}

K0Element K0Element::operator/(const K0Element& rhs) const { return *this * rhs.inverse(); }

K0Element K0Element::scaled(const mpz_class& n) const {
  if (n == 0) return zero(field_, precision_);
  const int gain = field_->e0() * field_->p_valuation(n);
  auto c = coeffs_;
  for (auto& x : c) x *= n;
  return {field_, shift_, std::move(c), precision_ + gain};
}

K0Element K0Element::divided_by_unit(const mpz_class& n) const {
  if (n == 0 || mpz_divisible_ui_p(n.get_mpz_t(), field_->p())) {
    throw std::invalid_argument("divided_by_unit: divisor is not a p-adic unit");
  }
  const mpz_class modulus =
      field_->prime_power(std::max(1, ceil_div(precision_ - shift_, field_->e0())) + 1);
  mpz_class inv;
  mpz_class nn = reduce_mod(n, modulus);
  mpz_invert(inv.get_mpz_t(), nn.get_mpz_t(), modulus.get_mpz_t());
  auto c = coeffs_;
  for (auto& x : c) x *= inv;
  return {field_, shift_, std::move(c), precision_};
}

K0Element K0Element::times_pi_power(int k) const {
  if (!determinate_) return zero(field_, precision_ + k);
  return {field_, shift_ + k, coeffs_, precision_ + k};
}

K0Element K0Element::pow(unsigned n) const {
  K0Element result = from_integer(field_, 1, precision_ - valuation_floor());
  K0Element base = *this;
  bool first = true;
  while (n > 0) {
    if (n & 1U) {
      result = first ? base : result * base;
      first = false;
    }
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

K0Element K0Element::truncated(int new_precision) const {
  if (new_precision >= precision_) return *this;
  return {field_, shift_, coeffs_, new_precision};
}

std::string K0Element::to_string() const {
  if (!determinate_) return "O(pi0^" + std::to_string(precision_) + ")";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < field_->e0(); ++i) {
    const auto& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << " + ";
    os << c.get_str() << "*pi0^" << (shift_ + i);
    first = false;
  }
  os << " + O(pi0^" << precision_ << ")";
  return os.str();
}

K0Element operator*(const mpz_class& n, const K0Element& x) { return x.scaled(n); }

bool not_in_artin_schreier_image(const K0Element& a) {
  const int v = a.valuation_or_throw();
  if (v >= 0) {
    throw Unsupported("membership in wp(K0) is only certified for negative valuation");
  }
  if (v % static_cast<int>(a.field()->p()) == 0) {
    throw Unsupported("membership in wp(K0) undecided when p divides v0(a)");
  }
  // v0(y^p - y) = p v0(y) when v0(y) < 0, and >= 0 otherwise.
  return true;
}

}  // namespace asw
