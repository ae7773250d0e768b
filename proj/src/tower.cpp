#include "asw/tower.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "asw/construction.hpp"
#include "asw/errors.hpp"

namespace asw {

namespace {

void accumulate(Coeff& acc, const K0Element& term) {
  if (acc) {
    *acc += term;
  } else {
    acc = term;
  }
}

long small_binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - i + 1) / i;
  return c;
}

/// Reduces x1-degrees >= p in a column indexed by x1-degree, using x1^p = x1 + a1.
void reduce_x1(std::vector<Coeff>& column, int p, const K0Element& a1) {
  for (int n = static_cast<int>(column.size()) - 1; n >= p; --n) {
    auto& top = column[static_cast<std::size_t>(n)];
    if (!top) continue;
    K0Element t = *top;
    top.reset();
    accumulate(column[static_cast<std::size_t>(n - p + 1)], t);
    accumulate(column[static_cast<std::size_t>(n - p)], a1 * t);
  }
}

/// Rewrites sum c_ij x1^i z^j in terms of w = z + s x1, i.e. z = w - s x1.
/// With s = mu this maps the x-basis to the y-basis; with s = -mu the reverse.
std::vector<Coeff> change_basis(const Extension& ext, const std::vector<Coeff>& coeffs,
                                bool to_y) {
  const int p = static_cast<int>(ext.p());
  // x1-degree up to 2p - 2 before reduction.
  std::vector<std::vector<Coeff>> columns(static_cast<std::size_t>(p),
                                          std::vector<Coeff>(static_cast<std::size_t>(2 * p - 1)));
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const auto& c = coeffs[static_cast<std::size_t>(i * p + j)];
      if (!c) continue;
      // x2 = y2 + mu x1 (to_y) or y2 = x2 - mu x1.
      for (int k = 0; k <= j; ++k) {
        long coef = ext.binomial(j, k);
        if (!to_y && (k % 2 == 1)) coef = -coef;
        K0Element term = k == 0 ? *c : *c * ext.mu_power(k);
        if (coef != 1) term = term.scaled(coef);
        accumulate(columns[static_cast<std::size_t>(j - k)][static_cast<std::size_t>(i + k)], term);
      }
    }
  }
  std::vector<Coeff> out(static_cast<std::size_t>(p * p));
  for (int j = 0; j < p; ++j) {
    auto& col = columns[static_cast<std::size_t>(j)];
    reduce_x1(col, p, ext.a1());
    for (int i = 0; i < p; ++i) out[static_cast<std::size_t>(i * p + j)] = std::move(col[static_cast<std::size_t>(i)]);
  }
  return out;
}

struct ValuationInfo {
  std::optional<int> valuation;
  int precision = kExactPrecision;
};

ValuationInfo analyze(const Extension& ext, const std::vector<Coeff>& y_coeffs) {
  const int p = static_cast<int>(ext.p());
  const int p2 = p * p;
  ValuationInfo info;
  std::optional<int> best;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const auto& c = y_coeffs[static_cast<std::size_t>(i * p + j)];
      if (!c) continue;
      const int mv = ext.monomial_valuation(i, j);
      info.precision = std::min(info.precision, p2 * c->precision() + mv);
      if (auto v = c->valuation()) {
        int tv = p2 * *v + mv;
        if (!best || tv < *best) best = tv;
      }
    }
  }
  if (best && *best < info.precision) info.valuation = best;
  return info;
}

}  // namespace

// ---------------------------------------------------------------- Extension

std::shared_ptr<const Extension> Extension::create(BaseFieldPtr base, const K0Element& a1,
                                                   const K0Element& mu,
                                                   PrecisionConfig precision) {
  auto r1 = validate_choice1(a1);
  if (!r1.passed()) throw ValidationFailed("choice of a1 rejected: " + r1.failures());
  auto r2 = validate_choice2(mu, a1);
  if (!r2.passed()) throw ValidationFailed("choice of mu rejected: " + r2.failures());

  std::shared_ptr<Extension> ext(new Extension());
  ext->base_ = std::move(base);
  const int p = static_cast<int>(ext->p());
  const int p2 = p * p;
  const int e0 = ext->e0();
  ext->b1_ = -a1.valuation_or_throw();
  ext->m_ = -mu.valuation_or_throw();
  ext->b2_ = p2 * ext->m_ + ext->b1_;

  ext->working_precision_ = precision.working > 0 ? precision.working : 2 * p2 * e0;
  // Products of the x-basis coefficients involve powers of a1 and mu; the
  // guard covers the worst of those valuation drops.
  const int guard = 2 * e0 + 4 * (p - 1) * (ext->b1_ + ext->m_ * p);
  ext->coefficient_precision_ = precision.coefficient > 0
                                    ? precision.coefficient
                                    : 2 * ceil_div(ext->working_precision_, p2) + guard;

  const int rel = ext->coefficient_precision_;
  auto refresh = [&](const K0Element& x) { return x.truncated(x.valuation_or_throw() + rel); };
  ext->a1_ = refresh(a1);
  ext->mu_ = refresh(mu);
  ext->a2_ = ext->mu_.pow(static_cast<unsigned>(p)) * ext->a1_;

  // x2^p = x2 + a2 + D(x1, a1), D(x1, a1) = -sum_k (C(p,k)/p) a1^{p-k} x1^k.
  ext->x2_relation_.clear();
  ext->x2_relation_.push_back(ext->a2_);
  for (int k = 1; k < p; ++k) {
    long c = small_binomial(p, k) / p;
    ext->x2_relation_.push_back(ext->a1_.pow(static_cast<unsigned>(p - k)).scaled(-c));
  }
  ext->mu_powers_.clear();
  ext->mu_powers_.push_back(K0Element::from_integer(ext->base_, 1, rel));
  for (int k = 1; k < p; ++k) ext->mu_powers_.push_back(ext->mu_powers_.back() * ext->mu_);

  // The monomial valuations x1^i y2^j must cover every residue mod p^2.
  std::set<int> residues;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) residues.insert(pos_mod(ext->monomial_valuation(i, j), p2));
  }
  if (static_cast<int>(residues.size()) != p2) {
    throw InvariantViolation("monomial valuations of x1^i y2^j are not distinct mod p^2");
  }
  return ext;
}

long Extension::binomial(int n, int k) const { return small_binomial(n, k); }

int Extension::monomial_valuation(int i, int j) const {
  return -i * static_cast<int>(p()) * b1_ - j * b2_;
}

// ---------------------------------------------------------------- K2Element

K2Element::K2Element(ExtensionPtr ext, std::vector<Coeff> coeffs)
    : ext_(std::move(ext)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<std::size_t>(ext_->degree())) {
    throw std::invalid_argument("K2Element: expected p^2 coefficients");
  }
}

K2Element K2Element::zero(ExtensionPtr ext) {
  std::vector<Coeff> c(static_cast<std::size_t>(ext->degree()));
  return {std::move(ext), std::move(c)};
}

K2Element K2Element::constant(ExtensionPtr ext, const K0Element& c) {
  std::vector<Coeff> coeffs(static_cast<std::size_t>(ext->degree()));
  coeffs[0] = c;
  return {std::move(ext), std::move(coeffs)};
}

K2Element K2Element::integer(ExtensionPtr ext, long n) {
  auto c = K0Element::from_integer(ext->base(), n, ext->coefficient_precision());
  return constant(std::move(ext), c);
}

K2Element K2Element::x1(ExtensionPtr ext) {
  auto one = K0Element::from_integer(ext->base(), 1, ext->coefficient_precision());
  std::vector<Coeff> coeffs(static_cast<std::size_t>(ext->degree()));
  coeffs[ext->p()] = one;
  return {std::move(ext), std::move(coeffs)};
}

K2Element K2Element::x2(ExtensionPtr ext) {
  auto one = K0Element::from_integer(ext->base(), 1, ext->coefficient_precision());
  std::vector<Coeff> coeffs(static_cast<std::size_t>(ext->degree()));
  coeffs[1] = one;
  return {std::move(ext), std::move(coeffs)};
}

K2Element K2Element::y2(ExtensionPtr ext) {
  auto one = K0Element::from_integer(ext->base(), 1, ext->coefficient_precision());
  return y_monomial(std::move(ext), one, 0, 1);
}

K2Element K2Element::from_y_basis(ExtensionPtr ext, std::vector<Coeff> coeffs) {
  if (coeffs.size() != static_cast<std::size_t>(ext->degree())) {
    throw std::invalid_argument("from_y_basis: expected p^2 coefficients");
  }
  auto x = change_basis(*ext, coeffs, false);
  return {std::move(ext), std::move(x)};
}

K2Element K2Element::y_monomial(ExtensionPtr ext, const K0Element& c, int i, int j) {
  std::vector<Coeff> coeffs(static_cast<std::size_t>(ext->degree()));
  coeffs[static_cast<std::size_t>(i) * ext->p() + j] = c;
  return from_y_basis(std::move(ext), std::move(coeffs));
}

std::vector<Coeff> K2Element::to_y_basis() const { return change_basis(*ext_, coeffs_, true); }

std::optional<int> K2Element::valuation() const { return analyze(*ext_, to_y_basis()).valuation; }

int K2Element::valuation_or_throw() const {
  auto info = analyze(*ext_, to_y_basis());
  if (!info.valuation) {
    throw IndeterminateValuation("K2 element is zero modulo M2^" + std::to_string(info.precision));
  }
  return *info.valuation;
}

int K2Element::valuation_floor() const {
  auto info = analyze(*ext_, to_y_basis());
  return info.valuation.value_or(info.precision);
}

int K2Element::precision() const { return analyze(*ext_, to_y_basis()).precision; }

bool K2Element::in_k1() const {
  const int p = static_cast<int>(ext_->p());
  for (int i = 0; i < p; ++i) {
    for (int j = 1; j < p; ++j) {
      const auto& c = coeff(i, j);
      if (c && !c->is_zero()) return false;
    }
  }
  return true;
}

bool K2Element::in_k0() const {
  if (!in_k1()) return false;
  for (int i = 1; i < static_cast<int>(ext_->p()); ++i) {
    const auto& c = coeff(i, 0);
    if (c && !c->is_zero()) return false;
  }
  return true;
}

K2Element K2Element::operator+(const K2Element& rhs) const {
  std::vector<Coeff> out = coeffs_;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (rhs.coeffs_[k]) accumulate(out[k], *rhs.coeffs_[k]);
  }
  return {ext_, std::move(out)};
}

K2Element K2Element::operator-() const {
  std::vector<Coeff> out = coeffs_;
  for (auto& c : out) {
    if (c) c = -*c;
  }
  return {ext_, std::move(out)};
}

K2Element K2Element::operator-(const K2Element& rhs) const { return *this + (-rhs); }

K2Element K2Element::operator*(const K0Element& c) const {
  std::vector<Coeff> out = coeffs_;
  for (auto& x : out) {
    if (x) x = *x * c;
  }
  return {ext_, std::move(out)};
}

K2Element K2Element::operator*(long n) const {
  std::vector<Coeff> out = coeffs_;
  for (auto& x : out) {
    if (x) x = x->scaled(n);
  }
  return {ext_, std::move(out)};
}

K2Element K2Element::times_pi_power(int k) const {
  std::vector<Coeff> out = coeffs_;
  for (auto& x : out) {
    if (x) x = x->times_pi_power(k);
  }
  return {ext_, std::move(out)};
}

K2Element K2Element::operator*(const K2Element& rhs) const {
  const int p = static_cast<int>(ext_->p());
  const int deg1 = 3 * p - 2;  // x1-degree bound after the x2 reduction
  const int deg2 = 2 * p - 1;
  // grid[j][i]: coefficient of x1^i x2^j
  std::vector<std::vector<Coeff>> grid(static_cast<std::size_t>(deg2),
                                       std::vector<Coeff>(static_cast<std::size_t>(deg1)));
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const auto& a = coeff(i, j);
      if (!a) continue;
      for (int k = 0; k < p; ++k) {
        for (int l = 0; l < p; ++l) {
          const auto& b = rhs.coeff(k, l);
          if (!b) continue;
          accumulate(grid[static_cast<std::size_t>(j + l)][static_cast<std::size_t>(i + k)], *a * *b);
        }
      }
    }
  }
  // x2^n = x2^{n-p} (x2 + R(x1)) for n >= p.
  for (int n = deg2 - 1; n >= p; --n) {
    auto& row = grid[static_cast<std::size_t>(n)];
    for (int i = 0; i < deg1; ++i) {
      auto& cell = row[static_cast<std::size_t>(i)];
      if (!cell) continue;
      K0Element t = *cell;
      cell.reset();
      accumulate(grid[static_cast<std::size_t>(n - p + 1)][static_cast<std::size_t>(i)], t);
      for (int k = 0; k < p; ++k) {
        accumulate(grid[static_cast<std::size_t>(n - p)][static_cast<std::size_t>(i + k)],
                   t * ext_->x2_relation(k));
      }
    }
  }
  std::vector<Coeff> out(static_cast<std::size_t>(p * p));
  for (int j = 0; j < p; ++j) {
    auto& col = grid[static_cast<std::size_t>(j)];
    reduce_x1(col, p, ext_->a1());
    for (int i = 0; i < p; ++i) out[static_cast<std::size_t>(i * p + j)] = std::move(col[static_cast<std::size_t>(i)]);
  }
  return {ext_, std::move(out)};
}

K2Element K2Element::pow(unsigned n) const {
  if (n == 0) return integer(ext_, 1);
  K2Element result = *this;
  for (unsigned k = 1; k < n; ++k) result = result * *this;
  return result;
}

// ---------------------------------------------------------------- helpers

MonomialExponents uniformizer_exponents(const Extension& ext, int r) {
  const int p = static_cast<int>(ext.p());
  const int p2 = p * p;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      const int mv = ext.monomial_valuation(i, j);
      if (pos_mod(mv - r, p2) == 0) return {(r - mv) / p2, i, j};
    }
  }
  throw InvariantViolation("no monomial of residue " + std::to_string(r));
}

K2Element uniformizer_k2(const ExtensionPtr& ext, int r) {
  auto e = uniformizer_exponents(*ext, r);
  auto c = K0Element::monomial(ext->base(), 1, e.pi_power,
                               e.pi_power + ext->coefficient_precision());
  return K2Element::y_monomial(ext, c, e.x1_power, e.y2_power);
}

K2Element lambda_element(const ExtensionPtr& ext, int t) {
  const int p2 = ext->degree();
  const int r = pos_mod(t, p2);
  auto e = uniformizer_exponents(*ext, r);
  const int k = e.pi_power + (t - r) / p2;
  auto c = K0Element::monomial(ext->base(), 1, k, k + ext->coefficient_precision());
  return K2Element::y_monomial(ext, c, e.x1_power, e.y2_power);
}

K2Element newton_inverse(const K2Element& u, const K2Element& y0) {
  const auto& ext = u.extension();
  const K2Element one = K2Element::integer(ext, 1);
  K2Element y = y0;
  K2Element err = one - u * y;
  if (auto v = err.valuation(); v && *v <= 0) {
    throw NoConvergence("newton_inverse: starting point is not an approximate inverse");
  }
  for (int step = 0; step < 64; ++step) {
    if (err.is_zero()) return y;
    y = y + y * err;
    err = one - u * y;
  }
  throw NoConvergence("newton_inverse: no convergence after 64 steps");
}

K2Element hensel_lift(const K2Element& c, const K2Element& t0, int target, HenselTrace* trace) {
  const auto& ext = c.extension();
  const unsigned p = ext->p();
  auto f = [&](const K2Element& t) { return t.pow(p) - t - c; };
  auto fprime = [&](const K2Element& t) {
    return t.pow(p - 1) * static_cast<long>(p) - K2Element::integer(ext, 1);
  };

  K2Element t = t0;
  K2Element residual = f(t);
  if (auto v = residual.valuation(); v && *v <= 0) {
    throw NoConvergence("hensel_lift: f(t0) is not in the maximal ideal (v2 = " +
                        std::to_string(*v) + ")");
  }
  if (auto v = fprime(t).valuation(); !v || *v != 0) {
    throw NoConvergence("hensel_lift: f'(t0) is not a unit");
  }
  const K2Element minus_one = K2Element::integer(ext, -1);
  for (int step = 0; step < 64; ++step) {
    if (trace) trace->residual_valuations.push_back(residual.valuation_floor());
    if (auto v = residual.valuation()) {
      if (*v >= target) return t;
    } else {
      const int prec = residual.precision();
      if (prec >= target) return t;
      throw PrecisionExhausted("hensel_lift: residual is zero only to v2-precision " +
                               std::to_string(prec) + " < " + std::to_string(target));
    }
    K2Element inv = newton_inverse(fprime(t), minus_one);
    t = t - residual * inv;
    residual = f(t);
    if (trace) ++trace->steps;
  }
  throw NoConvergence("hensel_lift: no convergence after 64 steps");
}

K0Element trace_k2_k0(std::span<const K2Element> conjugates) {
  if (conjugates.empty()) throw std::invalid_argument("trace_k2_k0: no conjugates");
  K2Element sum = conjugates.front();
  for (std::size_t k = 1; k < conjugates.size(); ++k) sum += conjugates[k];
  const auto& ext = sum.extension();
  const int p = static_cast<int>(ext->p());
  // Conjugates are exact only to the working precision, so the trace is
  // rational to that precision and no further.
  const int tolerance = ext->working_precision();
  std::vector<Coeff> rest = sum.coefficients();
  rest[0].reset();
  const K2Element off_k0(ext, std::move(rest));
  if (off_k0.valuation_floor() < tolerance) {
    throw NotRational("trace has a non-constant part of valuation " +
                      std::to_string(off_k0.valuation_floor()) + " below " +
                      std::to_string(tolerance));
  }
  const int prec = std::min(floor_div(sum.precision(), p * p), floor_div(tolerance, p * p));
  const auto& c0 = sum.coeff(0, 0);
  if (c0) return c0->truncated(prec);
  return K0Element::zero(ext->base(), prec);
}

}  // namespace asw
