#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "asw/errors.hpp"
#include "fixtures.hpp"

using namespace asw;
using fixtures::pi_power;

namespace {

/// Tables built directly from a pair of breaks.
ScaffoldTables tables_for(int p, int b1, int b2) {
  RamificationData rd;
  rd.b1 = b1;
  rd.b2 = b2;
  rd.residue_b = pos_mod(b2, p * p);
  rd.r_b2 = rd.residue_b;
  return build_tables(rd, p);
}

}  // namespace

TEST_CASE("worked example: scaffold tables") {
  const auto& t = fixtures::worked_example().tables;
  CHECK(t.size() == 9);
  CHECK(t.a_map == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(t.b_map == std::vector<int>{10, 13, 16, 20, 23, 26, 30, 33, 36});
  CHECK(t.d == std::vector<int>{1, 1, 1, 2, 2, 2, 3, 3, 4});
  CHECK(t.w == std::vector<int>{0, 0, 0, 1, 1, 1, 2, 2, 3});
  CHECK(t.d0 == 1);
  CHECK(t.r_b2 == 1);
  CHECK(t.digits(5) == std::pair{2, 1});
  CHECK(t.frak_b(4) == 23);
  CHECK_FALSE(t.frak_b(9).has_value());
  CHECK(t.carries(2, 1));
  CHECK_FALSE(t.carries(1, 1));
  CHECK(t.shift_index(1) == 8);
}

TEST_CASE("p = 2 and larger-break tables") {
  const auto& t2 = fixtures::dyadic_example().tables;
  CHECK(t2.b_map == std::vector<int>{5, 7, 10, 12});
  CHECK(t2.d == std::vector<int>{1, 1, 2, 3});
  CHECK(t2.w == std::vector<int>{0, 0, 1, 2});
  const auto& t = fixtures::non_free_example().tables;
  CHECK(t.r_b2 == 5);
  CHECK(t.b_map.front() == 50);
  CHECK(t.b_map.back() == 3 * 50 + 2 * 3 * 5);
}

TEST_CASE("w from valuations agrees with the d-table shortcut") {
  int cases = 0;
  for (int p : {2, 3, 5}) {
    const int q = p * p;
    for (int b1 = 1; b1 <= 3 * p + 1; ++b1) {
      if (std::gcd(b1, p) != 1) continue;
      for (int k = 1; k <= 4; ++k) {
        const int b2 = b1 + k * q;
        const auto t = tables_for(p, b1, b2);
        CHECK(w_by_valuations(t) == t.w);
        for (int j = 0; j < q; ++j) CHECK(t.w[static_cast<std::size_t>(j)] <= t.d[static_cast<std::size_t>(j)] - t.d0);
        auto sorted = t.a_map;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> iota(static_cast<std::size_t>(q));
        std::iota(iota.begin(), iota.end(), 0);
        CHECK(sorted == iota);
        ++cases;
      }
    }
  }
  CHECK(cases > 20);
}

TEST_CASE("psi powers by digit") {
  const auto& s = fixtures::worked_example();
  const auto& psi = s.g.psi;
  const auto x = lambda_element(s.ext, 10);
  CHECK((psi_power(0, psi, 3)(x) - x).is_zero());
  CHECK((psi_power(5, psi, 3)(x) - psi.psi2(psi.psi1(psi.psi1(x)))).is_zero());
  CHECK((apply_psi_power(5, psi, 3, x) - psi_power(5, psi, 3)(x)).is_zero());
  CHECK(psi_power(9, psi, 3).is_zero_operator());
  CHECK(apply_psi_power(9, psi, 3, x).is_zero());
}

TEST_CASE("rho family valuations and normal basis") {
  const auto& s = fixtures::worked_example();
  CHECK(s.family.valuations == std::vector<int>{1, 4, 7, 2, 5, 8, 3, 6, 0});
  CHECK(s.family.rho.valuation_or_throw() == 10);
  CHECK(s.family.normal_basis_rank == 9);
  CHECK(k0_rank({s.family.rho_a[0], s.family.rho_a[0] * 2L}) == 1);
  CHECK(k0_rank(s.family.rho_a) == 9);
  CHECK_THROWS_AS(rho_family(s.tables, s.g.psi, uniformizer_k2(s.ext, 2)), std::invalid_argument);
}

TEST_CASE("worked example: associated order and free generator") {
  const auto& s = fixtures::worked_example();
  const auto rep = associated_order_and_freeness(s.tables, s.fb, s.g.psi, s.family.rho0);
  CHECK(rep.free);
  CHECK(rep.residue_divides);
  CHECK(rep.w_equals_d_minus_d0);
  CHECK(rep.table_is_complete);
  CHECK(rep.valuation_table == std::vector<int>{1, 4, 7, 2, 5, 8, 3, 6, 0});
  REQUIRE(rep.assoc_order_basis.size() == 9);
  for (int j = 0; j < 9; ++j) {
    const auto& term = rep.assoc_order_basis[static_cast<std::size_t>(j)];
    CHECK(term.pi_power == -s.tables.w[static_cast<std::size_t>(j)]);
    CHECK(term.psi1_power == j % 3);
    CHECK(term.psi2_power == j / 3);
  }
  REQUIRE(rep.generator.has_value());
  CHECK(rep.generator->valuation_or_throw() == 1);

  // Any element of valuation r(b2) generates.
  const auto alt = s.family.rho0 * 2L + lambda_element(s.ext, 5);
  CHECK(associated_order_and_freeness(s.tables, s.fb, s.g.psi, alt).free);
}

TEST_CASE("p = 2: free with a complete table") {
  const auto& s = fixtures::dyadic_example();
  const auto rep = associated_order_and_freeness(s.tables, s.fb, s.g.psi, s.family.rho0);
  CHECK(rep.free);
  CHECK(rep.valuation_table == std::vector<int>{1, 3, 2, 0});
}

TEST_CASE("residue 5 does not divide 8: all three criteria say not free") {
  const auto& s = fixtures::non_free_example();
  const auto rep = associated_order_and_freeness(s.tables, s.fb, s.g.psi, s.family.rho0);
  CHECK_FALSE(rep.free);
  CHECK_FALSE(rep.residue_divides);
  CHECK_FALSE(rep.w_equals_d_minus_d0);
  CHECK_FALSE(rep.table_is_complete);
}

TEST_CASE("freeness verdict requires the bound") {
  const auto& s = fixtures::worked_example();
  FreenessBound failing = s.fb;
  failing.holds = false;
  CHECK_THROWS_AS(associated_order_and_freeness(s.tables, failing, s.g.psi, s.family.rho0),
                  BoundNotSatisfied);
}

TEST_CASE("congruence audit: serial and parallel kernels agree") {
  for (const auto* s : {&fixtures::worked_example(), &fixtures::dyadic_example()}) {
    const AuditInput in{&s->tables, &s->g.psi, &s->family, s->fb.congruence_modulus,
                        equality_threshold(s->tables, s->family)};
    const auto serial = congruence_audit_serial(in);
    const auto parallel = congruence_audit(in);
    CHECK(serial.passed());
    CHECK(parallel.passed());
    REQUIRE(serial.pairs.size() == parallel.pairs.size());
    CHECK(serial.pairs.size() == static_cast<std::size_t>(s->tables.size() * s->tables.size()));
    for (std::size_t k = 0; k < serial.pairs.size(); ++k) {
      CHECK(serial.pairs[k].order_valuation == parallel.pairs[k].order_valuation);
      CHECK(serial.pairs[k].second_difference == parallel.pairs[k].second_difference);
      CHECK(serial.pairs[k].first_difference == parallel.pairs[k].first_difference);
    }
  }
}

TEST_CASE("worked example: carry-free pair is exact, carrying pair is a congruence") {
  const auto& s = fixtures::worked_example();
  const int threshold = equality_threshold(s.tables, s.family);
  CHECK(threshold == 72);
  const AuditInput in{&s.tables, &s.g.psi, &s.family, 17, threshold};
  const auto p11 = audit_pair(in, 1, 1);
  CHECK_FALSE(p11.carry);
  REQUIRE(p11.first_difference.has_value());
  CHECK(*p11.first_difference >= threshold);
  const auto p21 = audit_pair(in, 2, 1);
  CHECK(p21.carry);
  REQUIRE(p21.first_difference.has_value());
  CHECK(*p21.first_difference < threshold);
  CHECK(*p21.first_difference >= 17);
  CHECK(p21.passed());
  const auto big = audit_pair(in, 8, 8);
  CHECK_FALSE(big.in_range);
  REQUIRE(big.large_valuation.has_value());
  CHECK(*big.large_valuation >= 1);
}

TEST_CASE("structure invariant suite passes on the worked example") {
  const auto& s = fixtures::worked_example();
  const auto rep = structure_invariant_suite(s.g, s.rd, s.fb, s.tables, s.family, {5, 7});
  for (const auto& r : rep.results) {
    INFO(r.name << ": " << r.detail);
    CHECK(r.passed);
  }
}

TEST_CASE("digit index must be negated for the valuation drops") {
  const auto& s = fixtures::worked_example();
  const auto negated = digit_drop_rows(s.tables, s.g.psi, s.ext, s.rd.precision_c, true);
  CHECK(std::all_of(negated.begin(), negated.end(), [](const auto& r) { return r.passed; }));
  const auto plain = digit_drop_rows(s.tables, s.g.psi, s.ext, s.rd.precision_c, false);
  CHECK(std::count_if(plain.begin(), plain.end(), [](const auto& r) { return !r.passed; }) == 4);
}
