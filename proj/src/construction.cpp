#include "asw/construction.hpp"

#include <sstream>

#include "asw/errors.hpp"
#include "asw/tower.hpp"

namespace asw {

namespace {

std::string q_str(const mpq_class& q) { return q.get_str(); }

Check make_check(std::string name, std::string statement, const mpq_class& lhs,
                 const mpq_class& rhs, bool passed) {
  Check c;
  c.name = std::move(name);
  c.statement = std::move(statement);
  c.lhs = lhs;
  c.rhs = rhs;
  c.passed = passed;
  c.detail = q_str(lhs) + (passed ? " satisfies " : " violates ") + c.statement + " against " +
             q_str(rhs);
  return c;
}

}  // namespace

bool ValidationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string ValidationReport::failures() const {
  std::string out;
  for (const auto& c : checks) {
    if (c.passed) continue;
    if (!out.empty()) out += ", ";
    out += c.name;
  }
  return out;
}

ValidationReport validate_choice1(const K0Element& a1) {
  ValidationReport report;
  const auto& base = *a1.field();
  const long p = base.p();
  const long e0 = base.e0();
  auto v = a1.valuation();
  if (!v) {
    Check c;
    c.name = "a1_determinate";
    c.statement = "a1 is nonzero at working precision";
    c.detail = "a1 is zero to precision";
    report.checks.push_back(c);
    return report;
  }
  const mpq_class val(*v);
  report.checks.push_back(make_check("choice1_negative", "v0(a1) < 0", val, 0, *v < 0));
  const mpq_class lower = rational(-p * e0, p * p - 1);
  report.checks.push_back(
      make_check("choice1_lower_bound", "-p e0/(p^2-1) < v0(a1)", val, lower, lower < val));
  report.checks.push_back(make_check("choice1_coprime", "p does not divide v0(a1)", val, p,
                                     *v % p != 0));

  Check guard;
  guard.name = "choice1_not_in_wp";
  guard.statement = "a1 not in wp(K0)";
  guard.lhs = val;
  guard.rhs = 0;
  try {
    guard.passed = not_in_artin_schreier_image(a1);
    guard.detail = "certified by p !| v0(a1) < 0";
  } catch (const Unsupported& e) {
    guard.passed = false;
    guard.detail = e.what();
  }
  report.checks.push_back(guard);
  return report;
}

ValidationReport validate_choice2(const K0Element& mu, const K0Element& a1) {
  ValidationReport report;
  const auto& base = *a1.field();
  const long p = base.p();
  const long e0 = base.e0();
  auto vmu = mu.valuation();
  auto va = a1.valuation();
  if (!vmu || !va) {
    Check c;
    c.name = "choice2_determinate";
    c.statement = "mu and a1 are nonzero at working precision";
    c.detail = "mu or a1 is zero to precision";
    report.checks.push_back(c);
    return report;
  }
  const long m = -*vmu;
  const mpq_class v(*va);
  report.checks.push_back(make_check("choice2_m_positive", "m = -v0(mu) > 0", m, 0, m > 0));

  // p e0/(p-1) > p m - (2 + 1/(p(p-1))) v0(a1)
  const mpq_class lhs1 = rational(p * e0, p - 1);
  const mpq_class rhs1 = mpq_class(p * m) - (mpq_class(2) + rational(1, p * (p - 1))) * v;
  report.checks.push_back(make_check("choice2_first_bound",
                                     "p e0/(p-1) > p m - (2 + 1/(p(p-1))) v0(a1)", lhs1, rhs1,
                                     lhs1 > rhs1));
  // p^2 m > -(p^2-1) v0(a1)
  const mpq_class lhs2(p * p * m);
  const mpq_class rhs2 = -mpq_class(p * p - 1) * v;
  report.checks.push_back(make_check("choice2_second_bound", "p^2 m > -(p^2-1) v0(a1)", lhs2,
                                     rhs2, lhs2 > rhs2));
  return report;
}

RamificationData ramification_data(const Extension& ext) {
  const int p = static_cast<int>(ext.p());
  const int p2 = p * p;
  const int e0 = ext.e0();
  RamificationData rd;
  rd.b1 = ext.b1();
  rd.b2 = p2 * ext.m() + rd.b1;
  rd.u1 = rd.b1;
  if ((rd.b2 - rd.b1) % p != 0) throw InvariantViolation("b2 - b1 is not divisible by p");
  rd.u2 = rd.u1 + (rd.b2 - rd.b1) / p;
  rd.u2_from_a2 = -ext.a2().valuation_or_throw();
  rd.depth = (p - 1) * rd.b2 + p * (p - 1) * rd.b1;
  rd.different_val = rd.depth + p2 - 1;
  rd.precision_c = std::min(rd.b2 - p2 * rd.b1, p2 * e0 - (p - 1) * rd.b2 - p * (p - 1) * rd.b1);
  rd.residue_b = pos_mod(rd.b2, p2);
  rd.r_b2 = rd.residue_b;
  rd.depth_bound = rational(p2 + 1, p2 + p) * (p2 * e0);

  auto fail = [](const std::string& what) { throw InvariantViolation(what); };
  if (rd.b2 != ext.b2()) fail("b2 != p^2 m + b1");
  if (pos_mod(rd.b1 - rd.b2, p2) != 0) fail("b1 and b2 are not congruent mod p^2");
  if (rd.b1 % p == 0) fail("p divides b1");
  if (!(rd.b2 > p2 * rd.b1)) fail("p^2 b1 < b2 fails");
  if (rd.u2 != rd.u2_from_a2) fail("u2 from the break formula differs from -v0(a2)");
  if (!(mpq_class(rd.depth) < rd.depth_bound)) fail("depth exceeds (p^2+1)/(p^2+p) p^2 e0");
  if (rd.precision_c < 1) fail("scaffold precision is not positive");
  return rd;
}

FreenessBound check_freeness_bound(const RamificationData& rd, const BaseField& base) {
  const int p = static_cast<int>(base.p());
  const int p2 = p * p;
  const int e0 = base.e0();
  FreenessBound fb;
  fb.lhs = p2 * e0;
  fb.rhs = (p + 1) * rd.b2 - (p - 1) * rd.b1;
  fb.holds = fb.lhs > fb.rhs;
  fb.e0_form_rhs = mpq_class(rd.u2) + rational(rd.b1, p2) + 1;
  fb.strict_e0_form = mpq_class(e0) > fb.e0_form_rhs;
  fb.congruence_modulus = p2 * e0 - p * rd.b2 - (p2 - p + 1) * rd.b1;
  fb.huge_with_b1_lhs = fb.congruence_modulus;
  fb.huge_with_b1 = fb.huge_with_b1_lhs > p2;
  fb.huge_without_b1_lhs = p2 * e0 - p * rd.b2 - (p2 - p + 1);
  fb.huge_without_b1 = fb.huge_without_b1_lhs > p2;
  return fb;
}

PrintedShiftBound audit_printed_shift_bound(const Extension& ext, const mpq_class& printed_lhs) {
  const int p = static_cast<int>(ext.p());
  PrintedShiftBound out;
  const int va1 = ext.a1().valuation_or_throw();
  out.printed_lhs = printed_lhs;
  out.evaluated_lhs = mpq_class(va1) + rational((p - 1) * ext.b1(), p);
  out.rhs = p * va1;
  out.evaluated_holds = out.evaluated_lhs < out.rhs;
  out.consistent_with_print = out.evaluated_lhs == out.printed_lhs && out.evaluated_holds;
  return out;
}

}  // namespace asw
