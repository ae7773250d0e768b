#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "asw/construction.hpp"
#include "asw/galois.hpp"
#include "asw/structure.hpp"

namespace asw {

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<InvariantResult> results;
  bool passed() const;
  std::vector<std::string> failed_names() const;
};

struct AuditOptions {
  int samples = 0;
  std::uint64_t seed = 0;
};

/// Relative v2-precision to which lifted Galois images are trusted:
/// sigma(x) is compared with its reference up to v2(x) + lift_tolerance.
int lift_tolerance(const Extension& ext);

/// Random element whose leading term is c * lambda_t with c a random unit,
/// plus `extra_terms` random terms of higher valuation.
K2Element random_element(const ExtensionPtr& ext, std::mt19937_64& rng, int t, int extra_terms = 3);

/// wp-relations, Witt congruence, epsilon and delta checks, sigma1^p = sigma2,
/// sigma1^(p^2) = id, traces of epsilon and delta, augmentation, Psi2^p growth,
/// and with samples > 0: multiplicativity of sigma1 and linearity of Psi1, Psi2.
SuiteReport galois_invariant_suite(const GaloisData& g, const AuditOptions& options);

/// Valuation of Psi_i lambda_t against t + p^(2-i) b_i, for every residue t.
struct DigitDropRow {
  int t = 0;
  int index = 0;  // shift_index(t)
  int psi = 0;    // 1 or 2
  int digit = 0;
  int valuation = 0;
  int expected = 0;  // t + p^(2-i) b_i
  bool passed = false;
};

/// Rows for t in [0, p^2), using the given digit index map.
std::vector<DigitDropRow> digit_drop_rows(const ScaffoldTables& t, const PsiOperators& psi,
                                          const ExtensionPtr& ext, int scaffold_precision,
                                          bool negate_index = true);

/// Scaffold valuation law for all 0 <= i, j < p on elements alpha with
/// v2(alpha) = b2 mod p^2. Returns the number of (alpha, i, j) mismatches.
int valuation_law_mismatches(const ScaffoldTables& t, const PsiOperators& psi,
                             const std::vector<K2Element>& alphas, std::string* first_failure);

/// w oracle, rho basis and normal basis rank, Psi1^p congruence, digit drops,
/// freeness agreement, the (j, r) congruence audit, and with samples > 0 the
/// valuation law on random alpha.
SuiteReport structure_invariant_suite(const GaloisData& g, const RamificationData& rd,
                                      const FreenessBound& bound, const ScaffoldTables& tables,
                                      const RhoFamily& family, const AuditOptions& options);

}  // namespace asw
