#include "asw/structure.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "asw/errors.hpp"

namespace asw {

namespace {

int inverse_mod(int a, int n) {
  a = pos_mod(a, n);
  for (int x = 1; x < n; ++x) {
    if ((a * x) % n == 1) return x;
  }
  throw std::invalid_argument("inverse_mod: " + std::to_string(a) + " is not invertible mod " +
                              std::to_string(n));
}

}  // namespace

std::optional<int> ScaffoldTables::frak_b(int a) const {
  if (a < 0 || a >= size()) return std::nullopt;
  return b_map[static_cast<std::size_t>(a)];
}

int ScaffoldTables::shift_index(int t) const {
  const int n = size();
  return pos_mod(-t * inverse_mod(b2, n), n);
}

bool ScaffoldTables::carries(int j, int r) const {
  auto [j0, j1] = digits(j);
  auto [r0, r1] = digits(r);
  return j0 + r0 >= p || j1 + r1 >= p;
}

ScaffoldTables build_tables(const RamificationData& rd, int p) {
  const int n = p * p;
  if (rd.b2 % p == 0) throw std::invalid_argument("build_tables: p divides b2");
  ScaffoldTables t;
  t.p = p;
  t.b1 = rd.b1;
  t.b2 = rd.b2;
  const int inv = inverse_mod(rd.b2, n);
  for (int a = 0; a < n; ++a) {
    t.a_map.push_back(pos_mod(a * inv, n));
    auto [a0, a1] = t.digits(a);
    t.b_map.push_back((1 + a1) * rd.b2 + a0 * p * rd.b1);
    t.d.push_back(floor_div(t.b_map.back(), n));
  }
  for (int j = 0; j < n; ++j) {
    int best = t.d[static_cast<std::size_t>(j)] - t.d[0];
    for (int a = 1; a < n - j; ++a) {
      best = std::min(best, t.d[static_cast<std::size_t>(j + a)] - t.d[static_cast<std::size_t>(a)]);
    }
    t.w.push_back(best);
  }
  t.r_b2 = pos_mod(rd.b2, n);
  t.d0 = t.d[0];
  return t;
}

std::vector<int> w_by_valuations(const ScaffoldTables& t) {
  const int n = t.size();
  std::vector<int> w;
  for (int j = 0; j < n; ++j) {
    int best = INT_MAX;
    for (int a = 0; a + j < n; ++a) {
      // v2(Psi^(j) rho_a) = r(b(a)) + b(j+a) - b(a) when j + a does not carry.
      const int ba = *t.frak_b(a);
      const int v = pos_mod(ba, n) + *t.frak_b(j + a) - ba;
      best = std::min(best, floor_div(v, n));
    }
    w.push_back(best);
  }
  return w;
}

GroupAlgebraOp psi_power(int a, const PsiOperators& psi, int p) {
  if (a < 0) throw std::invalid_argument("psi_power: negative index");
  if (a >= p * p) return GroupAlgebraOp::zero();
  return GroupAlgebraOp::compose(GroupAlgebraOp::power(psi.psi2, static_cast<unsigned>(a / p)),
                                 GroupAlgebraOp::power(psi.psi1, static_cast<unsigned>(a % p)));
}

K2Element apply_psi_power(int a, const PsiOperators& psi, int p, const K2Element& x) {
  if (a < 0) throw std::invalid_argument("apply_psi_power: negative index");
  if (a >= p * p) return K2Element::zero(x.extension());
  K2Element z = x;
  for (int k = 0; k < a % p; ++k) z = psi.psi1(z);
  for (int k = 0; k < a / p; ++k) z = psi.psi2(z);
  return z;
}

int k0_rank(const std::vector<K2Element>& elements) {
  std::vector<std::vector<Coeff>> rows;
  for (const auto& e : elements) rows.push_back(e.coefficients());
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<bool> used(rows.size(), false);
  int rank = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::optional<std::size_t> pivot;
    int best = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || !rows[r][c]) continue;
      auto v = rows[r][c]->valuation();
      if (!v) continue;
      if (!pivot || *v < best) {
        pivot = r;
        best = *v;
      }
    }
    if (!pivot) continue;
    used[*pivot] = true;
    ++rank;
    const K0Element& pv = *rows[*pivot][c];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (used[r] || !rows[r][c] || rows[r][c]->is_zero()) continue;
      const K0Element factor = *rows[r][c] / pv;
      for (std::size_t k = c; k < cols; ++k) {
        if (!rows[*pivot][k]) continue;
        K0Element term = factor * *rows[*pivot][k];
        rows[r][k] = rows[r][k] ? *rows[r][k] - term : -term;
      }
    }
  }
  return rank;
}

RhoFamily rho_family(const ScaffoldTables& t, const PsiOperators& psi, const K2Element& rho0) {
  const int n = t.size();
  if (rho0.valuation() != std::optional<int>(t.r_b2)) {
    throw std::invalid_argument("rho_family: v2(rho0) must equal r(b2) = " +
                                std::to_string(t.r_b2));
  }
  RhoFamily f;
  f.rho0 = rho0;
  f.rho = rho0.times_pi_power(t.d0);
  std::vector<K2Element> images;
  for (int a = 0; a < n; ++a) {
    images.push_back(apply_psi_power(a, psi, t.p, f.rho));
    f.rho_a.push_back(images.back().times_pi_power(-t.d[static_cast<std::size_t>(a)]));
    const int v = f.rho_a.back().valuation_or_throw();
    const int expected = pos_mod(*t.frak_b(a), n);
    if (v != expected) {
      throw InvariantViolation("v2(rho_" + std::to_string(a) + ") = " + std::to_string(v) +
                               ", expected " + std::to_string(expected));
    }
    f.valuations.push_back(v);
  }
  std::set<int> seen(f.valuations.begin(), f.valuations.end());
  if (static_cast<int>(seen.size()) != n || *seen.begin() != 0 || *seen.rbegin() != n - 1) {
    throw InvariantViolation("valuations of rho_a are not {0, ..., p^2 - 1}");
  }
  f.normal_basis_rank = k0_rank(images);
  return f;
}

ModuleStructureReport associated_order_and_freeness(const ScaffoldTables& t,
                                                    const FreenessBound& bound,
                                                    const PsiOperators& psi,
                                                    const K2Element& rho0) {
  if (!bound.holds) {
    throw BoundNotSatisfied("p^2 e0 = " + bound.lhs.get_str() +
                            " does not exceed (p+1) b2 - (p-1) b1 = " + bound.rhs.get_str());
  }
  const int n = t.size();
  ModuleStructureReport rep;
  rep.residue_divides = (n - 1) % t.r_b2 == 0;
  rep.w_equals_d_minus_d0 = true;
  std::set<int> seen;
  for (int j = 0; j < n; ++j) {
    const int wj = t.w[static_cast<std::size_t>(j)];
    auto [j0, j1] = t.digits(j);
    rep.assoc_order_basis.push_back({-wj, j0, j1});
    if (wj != t.d[static_cast<std::size_t>(j)] - t.d0) rep.w_equals_d_minus_d0 = false;
    const int v = apply_psi_power(j, psi, t.p, rho0).times_pi_power(-wj).valuation_or_throw();
    rep.valuation_table.push_back(v);
    seen.insert(v);
  }
  rep.table_is_complete = static_cast<int>(seen.size()) == n && *seen.begin() == 0 &&
                          *seen.rbegin() == n - 1;
  if (rep.residue_divides != rep.w_equals_d_minus_d0 ||
      rep.residue_divides != rep.table_is_complete) {
    throw InternalDisagreement(
        std::string("freeness criteria disagree: r(b2) | p^2-1 is ") +
        (rep.residue_divides ? "true" : "false") + ", w = d - d0 is " +
        (rep.w_equals_d_minus_d0 ? "true" : "false") + ", valuation table complete is " +
        (rep.table_is_complete ? "true" : "false"));
  }
  rep.free = rep.residue_divides;
  if (rep.free) rep.generator = rho0;
  return rep;
}

int equality_threshold(const ScaffoldTables& t, const RhoFamily& family) {
  const auto& ext = family.rho.extension();
  const int max_d = *std::max_element(t.d.begin(), t.d.end());
  return ext->working_precision() - t.size() * max_d;
}

PairAudit audit_pair(const AuditInput& in, int j, int r) {
  const ScaffoldTables& t = *in.tables;
  const int n = t.size();
  const auto at = [](const std::vector<int>& v, int k) { return v[static_cast<std::size_t>(k)]; };
  PairAudit out;
  out.j = j;
  out.r = r;
  out.carry = t.carries(j, r);
  out.in_range = j + r < n;

  const K2Element image = apply_psi_power(j, *in.psi, t.p, in.family->rho_a[static_cast<std::size_t>(r)]);
  const K2Element scaled = image.times_pi_power(-at(t.w, j));
  out.order_valuation = scaled.valuation_floor();
  if (out.order_valuation < 0) {
    out.failures.push_back("pi0^-w_j Psi^(j) rho_r is not integral (v2 = " +
                           std::to_string(out.order_valuation) + ")");
  }

  const int shift = t.d0 - at(t.d, j);
  if (!out.in_range) {
    out.large_valuation = image.times_pi_power(shift).valuation_floor();
    if (*out.large_valuation < 1) {
      out.failures.push_back("pi0^(d0-d_j) Psi^(j) rho_r is not in M2 (v2 = " +
                             std::to_string(*out.large_valuation) + ")");
    }
    out.second_difference = out.order_valuation;
  } else {
    const K2Element target =
        in.family->rho_a[static_cast<std::size_t>(j + r)].times_pi_power(at(t.d, j + r) - at(t.d, r));
    const K2Element diff = image - target;
    out.first_difference = diff.times_pi_power(shift).valuation_floor();
    out.second_difference = diff.times_pi_power(-at(t.w, j)).valuation_floor();
    if (*out.first_difference < in.modulus) {
      out.failures.push_back("first congruence fails (v2 = " + std::to_string(*out.first_difference) +
                             " < " + std::to_string(in.modulus) + ")");
    }
    if (!out.carry && diff.valuation_floor() < in.equality_threshold) {
      out.failures.push_back("carry-free pair is not an equality (v2 of difference = " +
                             std::to_string(diff.valuation_floor()) + ")");
    }
  }
  if (out.second_difference < in.modulus) {
    out.failures.push_back("second congruence fails (v2 = " + std::to_string(out.second_difference) +
                           " < " + std::to_string(in.modulus) + ")");
  }
  return out;
}

bool CongruenceAudit::passed() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairAudit& a) { return a.passed(); });
}

std::vector<std::string> CongruenceAudit::failures() const {
  std::vector<std::string> out;
  for (const auto& a : pairs) {
    for (const auto& f : a.failures) {
      out.push_back("(j, r) = (" + std::to_string(a.j) + ", " + std::to_string(a.r) + "): " + f);
    }
  }
  return out;
}

namespace {

// Exceptions must not cross the parallel region; record them as failures.
PairAudit audit_pair_guarded(const AuditInput& in, int j, int r) {
  try {
    return audit_pair(in, j, r);
  } catch (const std::exception& e) {
    PairAudit out;
    out.j = j;
    out.r = r;
    out.failures.push_back(std::string("error: ") + e.what());
    return out;
  }
}

}  // namespace

CongruenceAudit congruence_audit_serial(const AuditInput& in) {
  const int n = in.tables->size();
  CongruenceAudit audit;
  audit.modulus = in.modulus;
  audit.equality_threshold = in.equality_threshold;
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < n; ++r) audit.pairs.push_back(audit_pair_guarded(in, j, r));
  }
  return audit;
}

CongruenceAudit congruence_audit(const AuditInput& in) {
  const int n = in.tables->size();
  CongruenceAudit audit;
  audit.modulus = in.modulus;
  audit.equality_threshold = in.equality_threshold;
  audit.pairs.resize(static_cast<std::size_t>(n * n));
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < n * n; ++k) {
    audit.pairs[static_cast<std::size_t>(k)] = audit_pair_guarded(in, k / n, k % n);
  }
  return audit;
}

}  // namespace asw
