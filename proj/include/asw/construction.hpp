#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "asw/padic.hpp"

namespace asw {

class Extension;

/// One inequality or divisibility condition, evaluated exactly.
struct Check {
  std::string name;
  std::string statement;
  mpq_class lhs;
  mpq_class rhs;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;

  bool passed() const;
  /// Names of the failed checks, comma separated.
  std::string failures() const;
};

/// a1 must satisfy p !| v0(a1), -p e0/(p^2-1) < v0(a1) < 0 and a1 not in wp(K0).
ValidationReport validate_choice1(const K0Element& a1);

/// m = -v0(mu) > 0 with p e0/(p-1) > p m - (2 + 1/(p(p-1))) v0(a1) and
/// p^2 m > -(p^2-1) v0(a1).
ValidationReport validate_choice2(const K0Element& mu, const K0Element& a1);

struct RamificationData {
  int b1 = 0;
  int b2 = 0;
  int u1 = 0;
  int u2 = 0;
  /// d_{K2}(K2/K0) = (p-1) b2 + p (p-1) b1, in v2 units.
  int depth = 0;
  /// v2 of the different of K2/K0.
  int different_val = 0;
  /// Scaffold precision min{b2 - p^2 b1, p^2 e0 - (p-1) b2 - p (p-1) b1}.
  int precision_c = 0;
  /// b2 mod p^2 (the common residue of b1 and b2).
  int residue_b = 0;
  /// Least nonnegative residue r(b2).
  int r_b2 = 0;
  /// Upper bound (p^2+1)/(p^2+p) p^2 e0 on the depth.
  mpq_class depth_bound;
  /// u2 recomputed as -v0(a2).
  int u2_from_a2 = 0;
};

/// Lower/upper breaks, depth, different and scaffold precision; throws
/// InvariantViolation when a derived identity fails.
RamificationData ramification_data(const Extension& ext);

struct FreenessBound {
  /// p^2 e0 - (p+1) b2 + (p-1) b1 > 0.
  bool holds = false;
  mpq_class lhs;  // p^2 e0
  mpq_class rhs;  // (p+1) b2 - (p-1) b1
  /// e0 > u2 + b1/p^2 + 1.
  bool strict_e0_form = false;
  mpq_class e0_form_rhs;
  /// p^2 e0 - p b2 - (p^2-p+1) b1 > p^2.
  bool huge_with_b1 = false;
  int huge_with_b1_lhs = 0;
  /// The same inequality with the b1 factor dropped from the last term.
  bool huge_without_b1 = false;
  int huge_without_b1_lhs = 0;
  /// Modulus exponent p^2 e0 - p b2 - (p^2-p+1) b1 of the congruences.
  int congruence_modulus = 0;
};

FreenessBound check_freeness_bound(const RamificationData& rd, const BaseField& base);

/// The second bound check of the worked example as printed there:
/// v0(a1) + ((p-1)/p) b1 < v0(a1^p). It does not evaluate consistently, so
/// the printed left side and the evaluated one are both reported.
struct PrintedShiftBound {
  mpq_class printed_lhs;
  mpq_class evaluated_lhs;
  mpq_class rhs;
  bool evaluated_holds = false;
  bool consistent_with_print = false;
};

PrintedShiftBound audit_printed_shift_bound(const Extension& ext, const mpq_class& printed_lhs);

}  // namespace asw
