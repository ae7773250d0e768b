#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "asw/tower.hpp"

namespace asw {

/// A K0-automorphism of K2, determined by the images of x1 and x2.
///
/// The images of every basis monomial x1^i x2^j are computed once at
/// construction, so applying the map is a K0-linear combination.
class Automorphism {
 public:
  Automorphism(K2Element image_x1, K2Element image_x2);

  const ExtensionPtr& extension() const { return image_x1_.extension(); }
  const K2Element& image_x1() const { return image_x1_; }
  const K2Element& image_x2() const { return image_x2_; }

  K2Element apply(const K2Element& x) const;
  K2Element operator()(const K2Element& x) const { return apply(x); }
  /// this after inner: x -> this(inner(x)).
  Automorphism after(const Automorphism& inner) const;

 private:
  K2Element image_x1_;
  K2Element image_x2_;
  std::vector<K2Element> monomial_images_;
};

using AutomorphismPtr = std::shared_ptr<const Automorphism>;

/// D(X, Y) evaluated on K2 elements.
K2Element carry(const K2Element& x, const K2Element& y);

struct Sigma1Result {
  AutomorphismPtr sigma;
  /// sigma1(x1) - x1 - 1.
  K2Element epsilon;
  int epsilon_valuation = 0;
  /// sigma1(x2) - x2 - C1, C1 = D(x1, 1).
  K2Element delta_prime;
  HenselTrace x1_trace;
  HenselTrace x2_trace;
};

/// sigma1 by Hensel lifting x1 + 1 and x2 + C1; checks v2(epsilon) = p^2 e0 - p (p-1) b1
/// and v2(delta') > 0.
Sigma1Result compute_sigma1(const ExtensionPtr& ext);

struct Sigma2Result {
  AutomorphismPtr sigma;
  /// sigma2(x2) - x2 - 1.
  K2Element delta;
};

/// sigma2 = sigma1^p by composition; checks sigma2(x1) = x1 and the lower bound
/// on v2(delta).
Sigma2Result compute_sigma2(const Automorphism& sigma1);

/// sigma2 lifted directly from x2 + 1 with x1 fixed.
Sigma2Result compute_sigma2_direct(const ExtensionPtr& ext);

/// Formal element of the group algebra K0[G], evaluated structurally.
class GroupAlgebraOp {
 public:
  /// The zero operator.
  GroupAlgebraOp();
  static GroupAlgebraOp identity();
  static GroupAlgebraOp zero();
  static GroupAlgebraOp automorphism(AutomorphismPtr sigma);
  static GroupAlgebraOp scaled(const K0Element& c, const GroupAlgebraOp& op);
  static GroupAlgebraOp sum(const GroupAlgebraOp& a, const GroupAlgebraOp& b);
  static GroupAlgebraOp difference(const GroupAlgebraOp& a, const GroupAlgebraOp& b);
  /// outer after inner.
  static GroupAlgebraOp compose(const GroupAlgebraOp& outer, const GroupAlgebraOp& inner);
  /// sum_i coeffs[i] base^i.
  static GroupAlgebraOp polynomial(const GroupAlgebraOp& base, std::vector<K0Element> coeffs);
  static GroupAlgebraOp power(const GroupAlgebraOp& base, unsigned n);

  K2Element operator()(const K2Element& x) const;
  bool is_zero_operator() const;
  std::string describe() const;

 private:
  struct Node;
  explicit GroupAlgebraOp(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Matrix of op on the basis x1^i x2^j: column k holds the coefficients of
/// op(basis_k).
std::vector<std::vector<Coeff>> materialize(const GroupAlgebraOp& op, const ExtensionPtr& ext);

/// y(y-1)...(y-i+1)/i! for 0 <= i < p.
K0Element truncated_binomial(const K0Element& y, int i);

/// sum_{i<p} C(y, i) (sigma - 1)^i.
GroupAlgebraOp truncated_exp(const AutomorphismPtr& sigma, const K0Element& y);

struct PsiOperators {
  GroupAlgebraOp psi1;
  GroupAlgebraOp psi2;
};

/// Psi1 = sigma1 sigma2^[mu] - 1, Psi2 = sigma2 - 1.
PsiOperators psi_operators(const ExtensionPtr& ext, const AutomorphismPtr& sigma1,
                           const AutomorphismPtr& sigma2);

/// Options for building the Galois data of an extension.
struct GaloisOptions {
  /// Perturb sigma1(x2) by +1 (negative control for the invariant suites).
  bool corrupt_sigma1 = false;
  /// Also compute sigma1^p by composition and compare with the direct sigma2.
  bool cross_check_sigma2 = true;
};

/// sigma1, sigma2 and the scaffold operators of one extension.
struct GaloisData {
  ExtensionPtr ext;
  Sigma1Result sigma1;
  Sigma2Result sigma2;
  /// v2-agreement of sigma1^p with the directly lifted sigma2 (min over x1, x2).
  int sigma2_agreement = 0;
  PsiOperators psi;

  /// sigma1^k (x), 0 <= k < p^2.
  K2Element apply_power(int k, const K2Element& x) const;
  /// All p^2 conjugates of x.
  std::vector<K2Element> conjugates(const K2Element& x) const;
  K0Element trace_k2_k0(const K2Element& x) const;
  /// sum_{k<p} sigma2^k (x).
  K2Element trace_k2_k1(const K2Element& x) const;
  /// sum_{k<p} sigma1^k (x) for x in K1.
  K2Element trace_k1_k0(const K2Element& x) const;
};

GaloisData build_galois(const ExtensionPtr& ext, const GaloisOptions& options = {});

/// v2 lower bound on a - b: its valuation, or its precision when zero to precision.
int agreement(const K2Element& a, const K2Element& b);

}  // namespace asw
