#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "asw/construction.hpp"
#include "asw/galois.hpp"

namespace asw {

/// Integer combinatorics of the scaffold for one pair of breaks b1 < b2.
struct ScaffoldTables {
  int p = 0;
  int b1 = 0;
  int b2 = 0;
  /// a_map[j] = j * b2^{-1} mod p^2.
  std::vector<int> a_map;
  /// b_map[a] = (1 + a_(1)) b2 + a_(0) p b1 for a < p^2.
  std::vector<int> b_map;
  /// d[a] = floor(b_map[a] / p^2).
  std::vector<int> d;
  /// w[j] = min over a < p^2 - j of d[j + a] - d[a].
  std::vector<int> w;
  int r_b2 = 0;
  int d0 = 0;

  int size() const { return p * p; }
  /// Digits (a_(0), a_(1)) of a in base p.
  std::pair<int, int> digits(int a) const { return {a % p, a / p}; }
  /// b_map[a], empty for a >= p^2 (the infinite sentinel).
  std::optional<int> frak_b(int a) const;
  /// Index whose base-p digits predict which Psi_i act without a valuation drop:
  /// -t * b2^{-1} mod p^2.
  int shift_index(int t) const;
  /// True when the base-p addition of j and r carries.
  bool carries(int j, int r) const;
};

ScaffoldTables build_tables(const RamificationData& rd, int p);

/// w recomputed from valuations: for each j, the least floor((r(b(a)) + b(j+a) - b(a)) / p^2)
/// over a < p^2 - j. Independent of the d-table shortcut.
std::vector<int> w_by_valuations(const ScaffoldTables& t);

/// Psi2^{a_(1)} Psi1^{a_(0)} for a < p^2, the zero operator otherwise.
GroupAlgebraOp psi_power(int a, const PsiOperators& psi, int p);

/// Evaluates psi_power(a) on x by iterated application.
K2Element apply_psi_power(int a, const PsiOperators& psi, int p, const K2Element& x);

struct RhoFamily {
  K2Element rho0;
  /// pi0^{d0} rho0.
  K2Element rho;
  /// rho_a = pi0^{-d_a} Psi^(a) rho.
  std::vector<K2Element> rho_a;
  std::vector<int> valuations;
  /// Rank over K0 of the coefficient matrix of {Psi^(a) rho}.
  int normal_basis_rank = 0;
};

/// Requires v2(rho0) = r(b2). Throws InvariantViolation when the valuations of
/// rho_a differ from r(b(a)) or do not form {0, ..., p^2 - 1}.
RhoFamily rho_family(const ScaffoldTables& t, const PsiOperators& psi, const K2Element& rho0);

/// Rank over K0 of the given elements, by elimination with minimal-valuation pivots.
int k0_rank(const std::vector<K2Element>& elements);

struct AssocOrderTerm {
  int pi_power = 0;  // -w_j
  int psi1_power = 0;
  int psi2_power = 0;
};

struct ModuleStructureReport {
  std::vector<AssocOrderTerm> assoc_order_basis;
  bool free = false;
  std::optional<K2Element> generator;
  /// v2(pi0^{-w_j} Psi^(j) rho0) for each j.
  std::vector<int> valuation_table;
  bool w_equals_d_minus_d0 = false;
  bool residue_divides = false;
  bool table_is_complete = false;
};

/// Requires the freeness bound (BoundNotSatisfied otherwise). Decides freeness
/// by r(b2) | p^2 - 1, by w_j = d_j - d0 and by the valuation table, and throws
/// InternalDisagreement if they differ.
ModuleStructureReport associated_order_and_freeness(const ScaffoldTables& t,
                                                    const FreenessBound& bound,
                                                    const PsiOperators& psi,
                                                    const K2Element& rho0);

/// Outcome of the claims for one pair (j, r).
struct PairAudit {
  int j = 0;
  int r = 0;
  bool carry = false;
  bool in_range = false;  // j + r < p^2
  /// v2 of pi0^{-w_j} Psi^(j) rho_r; must be >= 0.
  int order_valuation = 0;
  /// v2 of pi0^{d0-d_j} Psi^(j) rho_r when j + r >= p^2; must be >= 1.
  std::optional<int> large_valuation;
  /// v2 of pi0^{d0-d_j} (Psi^(j) rho_r - pi0^{d_{j+r}-d_r} rho_{j+r}) when j + r < p^2.
  std::optional<int> first_difference;
  /// v2 of pi0^{-w_j} Psi^(j) rho_r - pi0^{d_{j+r}-d_r-w_j} rho_{j+r} (rho_{j+r} = 0 past p^2).
  int second_difference = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

struct CongruenceAudit {
  int modulus = 0;
  /// Differences at or above this are treated as exact equality.
  int equality_threshold = 0;
  std::vector<PairAudit> pairs;  // row-major in (j, r)
  bool passed() const;
  std::vector<std::string> failures() const;
};

/// Context shared by the audit kernels.
struct AuditInput {
  const ScaffoldTables* tables;
  const PsiOperators* psi;
  const RhoFamily* family;
  int modulus;
  int equality_threshold;
};

/// Precision at which computed differences count as exact: the least precision
/// of the rho family less the largest pi0 shift applied.
int equality_threshold(const ScaffoldTables& t, const RhoFamily& family);

PairAudit audit_pair(const AuditInput& in, int j, int r);
CongruenceAudit congruence_audit_serial(const AuditInput& in);
/// Same result as the serial audit, with the (j, r) grid spread over OpenMP threads.
CongruenceAudit congruence_audit(const AuditInput& in);

}  // namespace asw
