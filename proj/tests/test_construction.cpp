#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "asw/errors.hpp"
#include "fixtures.hpp"

using namespace asw;
using fixtures::pi_power;

namespace {

const Check& find(const ValidationReport& r, const std::string& name) {
  auto it = std::find_if(r.checks.begin(), r.checks.end(),
                         [&](const Check& c) { return c.name == name; });
  REQUIRE(it != r.checks.end());
  return *it;
}

}  // namespace

TEST_CASE("first choice: worked example passes with exact bounds") {
  const auto f = make_base_field(3, 6);
  const auto r = validate_choice1(pi_power(f, -1));
  CHECK(r.passed());
  CHECK(find(r, "choice1_lower_bound").rhs == rational(-9, 4));
  CHECK(find(r, "choice1_lower_bound").lhs == -1);
  CHECK(find(r, "choice1_negative").passed);
  CHECK(find(r, "choice1_coprime").passed);
  CHECK(find(r, "choice1_not_in_wp").passed);
}

TEST_CASE("first choice: failures are named") {
  const auto f = make_base_field(3, 6);
  CHECK_FALSE(find(validate_choice1(pi_power(f, -3)), "choice1_coprime").passed);
  CHECK_FALSE(find(validate_choice1(pi_power(f, -3)), "choice1_lower_bound").passed);
  CHECK_FALSE(find(validate_choice1(pi_power(f, 1)), "choice1_negative").passed);
  CHECK_FALSE(validate_choice1(pi_power(f, -4)).passed());
}

TEST_CASE("second choice: worked example and negative controls") {
  const auto f = make_base_field(3, 6);
  const auto a1 = pi_power(f, -1);
  CHECK(validate_choice2(pi_power(f, -1), a1).passed());

  const auto bad = validate_choice2(pi_power(f, 0), a1);
  CHECK_FALSE(find(bad, "choice2_m_positive").passed);
  CHECK_FALSE(find(bad, "choice2_second_bound").passed);

  const auto a1b = pi_power(f, -2);
  const auto ctrl = validate_choice2(pi_power(f, -1), a1b);
  CHECK(find(ctrl, "choice2_first_bound").passed);
  const auto& second = find(ctrl, "choice2_second_bound");
  CHECK_FALSE(second.passed);
  CHECK(second.lhs == 9);
  CHECK(second.rhs == 16);
  CHECK(ctrl.failures().find("choice2_second_bound") != std::string::npos);

  // A large m breaks the first bound.
  CHECK_FALSE(find(validate_choice2(pi_power(f, -5), a1), "choice2_first_bound").passed);
}

TEST_CASE("worked example: ramification data") {
  const auto& rd = fixtures::worked_example().rd;
  CHECK(rd.b1 == 1);
  CHECK(rd.b2 == 10);
  CHECK(rd.u1 == 1);
  CHECK(rd.u2 == 4);
  CHECK(rd.u2_from_a2 == 4);
  CHECK(rd.depth == 26);
  CHECK(rd.depth_bound == 45);
  CHECK(rd.depth < rd.depth_bound);
  CHECK(rd.different_val == 34);
  CHECK(rd.precision_c == 1);
  CHECK(rd.residue_b == 1);
  CHECK(rd.r_b2 == 1);
}

TEST_CASE("worked example: freeness bound and its auxiliary forms") {
  const auto& fb = fixtures::worked_example().fb;
  CHECK(fb.holds);
  CHECK(fb.lhs == 54);
  CHECK(fb.rhs == 38);
  CHECK(fb.strict_e0_form);
  CHECK(fb.e0_form_rhs == rational(46, 9));
  CHECK(fb.congruence_modulus == 17);
  CHECK(fb.huge_with_b1);
  CHECK(fb.huge_with_b1_lhs == 17);
  CHECK(fb.huge_without_b1);
}

TEST_CASE("p = 2: the bound holds while the auxiliary forms fail") {
  const auto& s = fixtures::dyadic_example();
  CHECK(s.rd.b1 == 1);
  CHECK(s.rd.b2 == 5);
  CHECK(s.rd.depth == 7);
  CHECK(s.rd.depth_bound == rational(40, 3));
  CHECK(s.rd.precision_c == 1);
  CHECK(s.fb.holds);
  CHECK(s.fb.lhs == 16);
  CHECK(s.fb.rhs == 14);
  CHECK_FALSE(s.fb.strict_e0_form);
  CHECK(s.fb.e0_form_rhs == rational(17, 4));
  CHECK_FALSE(s.fb.huge_with_b1);
  CHECK(s.fb.huge_with_b1_lhs == 3);
  CHECK_FALSE(s.fb.huge_without_b1);
}

TEST_CASE("larger breaks: bound holds, residue does not divide p^2 - 1") {
  const auto& s = fixtures::non_free_example();
  CHECK(s.rd.b1 == 5);
  CHECK(s.rd.b2 == 50);
  CHECK(s.fb.holds);
  CHECK(s.fb.lhs == 198);
  CHECK(s.fb.rhs == 190);
  CHECK(s.rd.r_b2 == 5);
  CHECK(8 % s.rd.r_b2 != 0);
}

TEST_CASE("bound failure is reported") {
  const auto f = make_base_field(3, 4);
  const auto ext = Extension::create(f, pi_power(f, -1), pi_power(f, -1));
  const auto rd = ramification_data(*ext);
  const auto fb = check_freeness_bound(rd, *f);
  CHECK(fb.lhs == 36);
  CHECK(fb.rhs == 38);
  CHECK_FALSE(fb.holds);
}

TEST_CASE("printed shift bound does not evaluate as printed") {
  const auto& ext = *fixtures::worked_example().ext;
  const auto item = audit_printed_shift_bound(ext, rational(-10, 3));
  CHECK(item.printed_lhs == rational(-10, 3));
  CHECK(item.evaluated_lhs == rational(-1, 3));
  CHECK(item.rhs == -3);
  CHECK_FALSE(item.evaluated_holds);
  CHECK_FALSE(item.consistent_with_print);
}
