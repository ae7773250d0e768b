#include "asw/galois.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include "asw/errors.hpp"
#include "asw/witt2.hpp"

namespace asw {

// ---------------------------------------------------------------- Automorphism

Automorphism::Automorphism(K2Element image_x1, K2Element image_x2)
    : image_x1_(std::move(image_x1)), image_x2_(std::move(image_x2)) {
  const auto& ext = image_x1_.extension();
  const int p = static_cast<int>(ext->p());
  std::vector<K2Element> pow1{K2Element::integer(ext, 1)};
  std::vector<K2Element> pow2{K2Element::integer(ext, 1)};
  for (int k = 1; k < p; ++k) {
    pow1.push_back(k == 1 ? image_x1_ : pow1.back() * image_x1_);
    pow2.push_back(k == 1 ? image_x2_ : pow2.back() * image_x2_);
  }
  monomial_images_.reserve(static_cast<std::size_t>(p * p));
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i == 0) {
        monomial_images_.push_back(pow2[static_cast<std::size_t>(j)]);
      } else if (j == 0) {
        monomial_images_.push_back(pow1[static_cast<std::size_t>(i)]);
      } else {
        monomial_images_.push_back(pow1[static_cast<std::size_t>(i)] * pow2[static_cast<std::size_t>(j)]);
      }
    }
  }
}

K2Element Automorphism::apply(const K2Element& x) const {
  const auto& ext = x.extension();
  const auto& coeffs = x.coefficients();
  std::vector<Coeff> out(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (!coeffs[k]) continue;
    const auto& image = monomial_images_[k].coefficients();
    for (std::size_t l = 0; l < image.size(); ++l) {
      if (!image[l]) continue;
      K0Element term = *coeffs[k] * *image[l];
      if (out[l]) {
        *out[l] += term;
      } else {
        out[l] = std::move(term);
      }
    }
  }
  return {ext, std::move(out)};
}

Automorphism Automorphism::after(const Automorphism& inner) const {
  return {apply(inner.image_x1()), apply(inner.image_x2())};
}

K2Element carry(const K2Element& x, const K2Element& y) {
  return carry_polynomial(x.extension()->p(), x, y);
}

int agreement(const K2Element& a, const K2Element& b) { return (a - b).valuation_floor(); }

// ---------------------------------------------------------------- sigma1, sigma2

Sigma1Result compute_sigma1(const ExtensionPtr& ext) {
  const int p = static_cast<int>(ext->p());
  const int target = ext->working_precision();
  const K2Element one = K2Element::integer(ext, 1);
  const K2Element x1 = K2Element::x1(ext);
  const K2Element x2 = K2Element::x2(ext);
  const K2Element a1 = K2Element::constant(ext, ext->a1());
  const K2Element a2 = K2Element::constant(ext, ext->a2());

  Sigma1Result out;
  K2Element image_x1 = hensel_lift(a1, x1 + one, target, &out.x1_trace);
  out.epsilon = image_x1 - x1 - one;
  out.epsilon_valuation = out.epsilon.valuation_or_throw();
  const int expected = p * p * ext->e0() - p * (p - 1) * ext->b1();
  if (out.epsilon_valuation != expected) {
    throw InvariantViolation("v2(epsilon) = " + std::to_string(out.epsilon_valuation) +
                             ", expected " + std::to_string(expected));
  }

  const K2Element c1 = carry(x1, one);
  K2Element image_x2 = hensel_lift(a2 + carry(image_x1, a1), x2 + c1, target, &out.x2_trace);
  out.delta_prime = image_x2 - x2 - c1;
  if (auto v = out.delta_prime.valuation(); v && *v <= 0) {
    throw InvariantViolation("v2(delta') = " + std::to_string(*v) + " is not positive");
  }
  out.sigma = std::make_shared<const Automorphism>(std::move(image_x1), std::move(image_x2));
  return out;
}

namespace {

void check_sigma2(const ExtensionPtr& ext, const K2Element& image_x1, const K2Element& delta) {
  const int p = static_cast<int>(ext->p());
  const K2Element x1 = K2Element::x1(ext);
  // Lifted images are roots only to the working precision.
  if (agreement(image_x1, x1) < ext->working_precision()) {
    throw InvariantViolation("sigma2 does not fix x1: v2(sigma2 x1 - x1) = " +
                             std::to_string(agreement(image_x1, x1)));
  }
  const int bound = p * p * ext->e0() + (p - 1) * p * ext->a2().valuation_or_throw();
  if (delta.valuation_floor() < bound) {
    throw InvariantViolation("v2(delta) = " + std::to_string(delta.valuation_floor()) +
                             " is below " + std::to_string(bound));
  }
}

}  // namespace

Sigma2Result compute_sigma2(const Automorphism& sigma1) {
  const auto& ext = sigma1.extension();
  const int p = static_cast<int>(ext->p());
  K2Element image_x1 = sigma1.image_x1();
  K2Element image_x2 = sigma1.image_x2();
  for (int k = 1; k < p; ++k) {
    image_x1 = sigma1.apply(image_x1);
    image_x2 = sigma1.apply(image_x2);
  }
  Sigma2Result out;
  out.delta = image_x2 - K2Element::x2(ext) - K2Element::integer(ext, 1);
  check_sigma2(ext, image_x1, out.delta);
  out.sigma = std::make_shared<const Automorphism>(std::move(image_x1), std::move(image_x2));
  return out;
}

Sigma2Result compute_sigma2_direct(const ExtensionPtr& ext) {
  const K2Element one = K2Element::integer(ext, 1);
  const K2Element x1 = K2Element::x1(ext);
  const K2Element x2 = K2Element::x2(ext);
  const K2Element rhs = K2Element::constant(ext, ext->a2()) +
                        carry(x1, K2Element::constant(ext, ext->a1()));
  K2Element image_x2 = hensel_lift(rhs, x2 + one, ext->working_precision());
  Sigma2Result out;
  out.delta = image_x2 - x2 - one;
  check_sigma2(ext, x1, out.delta);
  out.sigma = std::make_shared<const Automorphism>(x1, std::move(image_x2));
  return out;
}

// ---------------------------------------------------------------- GroupAlgebraOp

struct GroupAlgebraOp::Node {
  enum class Kind { kIdentity, kZero, kApply, kScale, kSum, kDifference, kCompose, kPolynomial };
  Kind kind = Kind::kIdentity;
  AutomorphismPtr sigma;
  std::vector<K0Element> scalars;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

GroupAlgebraOp::GroupAlgebraOp() : GroupAlgebraOp(zero()) {}

GroupAlgebraOp GroupAlgebraOp::identity() {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kIdentity;
  return GroupAlgebraOp(n);
}

GroupAlgebraOp GroupAlgebraOp::zero() {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kZero;
  return GroupAlgebraOp(n);
}

GroupAlgebraOp GroupAlgebraOp::automorphism(AutomorphismPtr sigma) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kApply;
  n->sigma = std::move(sigma);
  return GroupAlgebraOp(n);
}

GroupAlgebraOp GroupAlgebraOp::scaled(const K0Element& c, const GroupAlgebraOp& op) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kScale;
  n->scalars = {c};
  n->a = op.node_;
  return GroupAlgebraOp(n);
}

GroupAlgebraOp GroupAlgebraOp::sum(const GroupAlgebraOp& a, const GroupAlgebraOp& b) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kSum;
  n->a = a.node_;
  n->b = b.node_;
  return GroupAlgebraOp(n);
}

GroupAlgebraOp GroupAlgebraOp::difference(const GroupAlgebraOp& a, const GroupAlgebraOp& b) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kDifference;
  n->a = a.node_;
  n->b = b.node_;
  return GroupAlgebraOp(n);
}

GroupAlgebraOp GroupAlgebraOp::compose(const GroupAlgebraOp& outer, const GroupAlgebraOp& inner) {
  if (outer.is_zero_operator() || inner.is_zero_operator()) return zero();
  if (outer.node_->kind == Node::Kind::kIdentity) return inner;
  if (inner.node_->kind == Node::Kind::kIdentity) return outer;
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kCompose;
  n->a = outer.node_;
  n->b = inner.node_;
  return GroupAlgebraOp(n);
}

GroupAlgebraOp GroupAlgebraOp::polynomial(const GroupAlgebraOp& base, std::vector<K0Element> coeffs) {
  if (coeffs.empty()) return zero();
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kPolynomial;
  n->a = base.node_;
  n->scalars = std::move(coeffs);
  return GroupAlgebraOp(n);
}

GroupAlgebraOp GroupAlgebraOp::power(const GroupAlgebraOp& base, unsigned n) {
  GroupAlgebraOp out = identity();
  for (unsigned k = 0; k < n; ++k) out = compose(base, out);
  return out;
}

bool GroupAlgebraOp::is_zero_operator() const { return node_->kind == Node::Kind::kZero; }

K2Element GroupAlgebraOp::operator()(const K2Element& x) const {
  // Structural recursion over the expression tree.
  struct Eval {
    static K2Element run(const Node& n, const K2Element& x) {
      using K = Node::Kind;
      switch (n.kind) {
        case K::kIdentity:
          return x;
        case K::kZero:
          return K2Element::zero(x.extension());
        case K::kApply:
          return n.sigma->apply(x);
        case K::kScale:
          return run(*n.a, x) * n.scalars.front();
        case K::kSum:
          return run(*n.a, x) + run(*n.b, x);
        case K::kDifference:
          return run(*n.a, x) - run(*n.b, x);
        case K::kCompose:
          return run(*n.a, run(*n.b, x));
        case K::kPolynomial: {
          K2Element z = x;
          K2Element acc = z * n.scalars.front();
          for (std::size_t i = 1; i < n.scalars.size(); ++i) {
            z = run(*n.a, z);
            acc += z * n.scalars[i];
          }
          return acc;
        }
      }
      throw std::logic_error("GroupAlgebraOp: unknown node kind");
    }
  };
  return Eval::run(*node_, x);
}

std::string GroupAlgebraOp::describe() const {
  struct Show {
    static std::string run(const Node& n) {
      using K = Node::Kind;
      switch (n.kind) {
        case K::kIdentity:
          return "1";
        case K::kZero:
          return "0";
        case K::kApply:
          return "sigma";
        case K::kScale:
          return "c*(" + run(*n.a) + ")";
        case K::kSum:
          return "(" + run(*n.a) + " + " + run(*n.b) + ")";
        case K::kDifference:
          return "(" + run(*n.a) + " - " + run(*n.b) + ")";
        case K::kCompose:
          return run(*n.a) + " o " + run(*n.b);
        case K::kPolynomial:
          return "poly_" + std::to_string(n.scalars.size() - 1) + "(" + run(*n.a) + ")";
      }
      return "?";
    }
  };
  return Show::run(*node_);
}

std::vector<std::vector<Coeff>> materialize(const GroupAlgebraOp& op, const ExtensionPtr& ext) {
  const int n = ext->degree();
  std::vector<std::vector<Coeff>> columns;
  columns.reserve(static_cast<std::size_t>(n));
  const auto one = K0Element::from_integer(ext->base(), 1, ext->coefficient_precision());
  for (int k = 0; k < n; ++k) {
    std::vector<Coeff> basis(static_cast<std::size_t>(n));
    basis[static_cast<std::size_t>(k)] = one;
    columns.push_back(op(K2Element(ext, std::move(basis))).coefficients());
  }
  return columns;
}

K0Element truncated_binomial(const K0Element& y, int i) {
  const auto& field = y.field();
  const int rel = y.precision() - y.valuation_floor();
  K0Element num = K0Element::from_integer(field, 1, rel);
  mpz_class factorial = 1;
  for (int k = 0; k < i; ++k) {
    num = num * (y - K0Element::from_integer(field, k, y.precision()));
    factorial *= k + 1;
  }
  return num.divided_by_unit(factorial);
}

GroupAlgebraOp truncated_exp(const AutomorphismPtr& sigma, const K0Element& y) {
  const int p = static_cast<int>(sigma->extension()->p());
  std::vector<K0Element> coeffs;
  for (int i = 0; i < p; ++i) coeffs.push_back(truncated_binomial(y, i));
  auto delta = GroupAlgebraOp::difference(GroupAlgebraOp::automorphism(sigma),
                                          GroupAlgebraOp::identity());
  return GroupAlgebraOp::polynomial(delta, std::move(coeffs));
}

PsiOperators psi_operators(const ExtensionPtr& ext, const AutomorphismPtr& sigma1,
                           const AutomorphismPtr& sigma2) {
  auto id = GroupAlgebraOp::identity();
  auto psi1 = GroupAlgebraOp::difference(
      GroupAlgebraOp::compose(GroupAlgebraOp::automorphism(sigma1), truncated_exp(sigma2, ext->mu())),
      id);
  auto psi2 = GroupAlgebraOp::difference(GroupAlgebraOp::automorphism(sigma2), id);
  return {psi1, psi2};
}

// ---------------------------------------------------------------- GaloisData

K2Element GaloisData::apply_power(int k, const K2Element& x) const {
  const int p = static_cast<int>(ext->p());
  K2Element z = x;
  for (int i = 0; i < k % p; ++i) z = sigma1.sigma->apply(z);
  for (int i = 0; i < k / p; ++i) z = sigma2.sigma->apply(z);
  return z;
}

std::vector<K2Element> GaloisData::conjugates(const K2Element& x) const {
  const int p = static_cast<int>(ext->p());
  std::vector<K2Element> out;
  out.reserve(static_cast<std::size_t>(p * p));
  K2Element row = x;
  for (int k1 = 0; k1 < p; ++k1) {
    K2Element z = row;
    for (int k0 = 0; k0 < p; ++k0) {
      out.push_back(z);
      z = sigma1.sigma->apply(z);
    }
    row = sigma2.sigma->apply(row);
  }
  return out;
}

K0Element GaloisData::trace_k2_k0(const K2Element& x) const {
  auto conj = conjugates(x);
  return asw::trace_k2_k0(conj);
}

K2Element GaloisData::trace_k2_k1(const K2Element& x) const {
  const int p = static_cast<int>(ext->p());
  K2Element z = x;
  K2Element acc = x;
  for (int k = 1; k < p; ++k) {
    z = sigma2.sigma->apply(z);
    acc += z;
  }
  return acc;
}

K2Element GaloisData::trace_k1_k0(const K2Element& x) const {
  if (!x.in_k1()) throw std::invalid_argument("trace_k1_k0: argument is not in K1");
  const int p = static_cast<int>(ext->p());
  K2Element z = x;
  K2Element acc = x;
  for (int k = 1; k < p; ++k) {
    z = sigma1.sigma->apply(z);
    acc += z;
  }
  return acc;
}

GaloisData build_galois(const ExtensionPtr& ext, const GaloisOptions& options) {
  GaloisData g;
  g.ext = ext;
  g.sigma1 = compute_sigma1(ext);
  if (options.corrupt_sigma1) {
    auto bad_x2 = g.sigma1.sigma->image_x2() + K2Element::integer(ext, 1);
    g.sigma1.sigma = std::make_shared<const Automorphism>(g.sigma1.sigma->image_x1(), bad_x2);
    g.sigma1.delta_prime = g.sigma1.delta_prime + K2Element::integer(ext, 1);
  }
  g.sigma2 = compute_sigma2_direct(ext);
  g.sigma2_agreement = kExactPrecision;
  if (options.cross_check_sigma2 && !options.corrupt_sigma1) {
    Sigma2Result composed = compute_sigma2(*g.sigma1.sigma);
    g.sigma2_agreement =
        std::min(agreement(composed.sigma->image_x1(), g.sigma2.sigma->image_x1()),
                 agreement(composed.sigma->image_x2(), g.sigma2.sigma->image_x2()));
  }
  g.psi = psi_operators(ext, g.sigma1.sigma, g.sigma2.sigma);
  return g;
}

}  // namespace asw
