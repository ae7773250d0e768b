#include "asw/audit.hpp"

#include <algorithm>
#include <sstream>

#include "asw/errors.hpp"

namespace asw {

namespace {

InvariantResult result(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

std::string vs(int got, const char* rel, int bound) {
  return std::to_string(got) + " " + rel + " " + std::to_string(bound);
}

mpz_class random_integer(std::mt19937_64& rng, unsigned p, int digits, bool unit) {
  std::uniform_int_distribution<unsigned> dist(0, p - 1);
  mpz_class out = 0;
  for (int k = 0; k < digits; ++k) out = out * p + dist(rng);
  if (unit) {
    std::uniform_int_distribution<unsigned> lead(1, p - 1);
    out = out * p + lead(rng);
  }
  return out;
}

K0Element k0_integer(const ExtensionPtr& ext, const mpz_class& n) {
  return K0Element::from_integer(ext->base(), n, ext->coefficient_precision());
}

K2Element apply_n(const Automorphism& s, K2Element x, int n) {
  for (int k = 0; k < n; ++k) x = s.apply(x);
  return x;
}

K2Element apply_op_n(const GroupAlgebraOp& op, K2Element x, int n) {
  for (int k = 0; k < n; ++k) x = op(x);
  return x;
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

std::vector<std::string> SuiteReport::failed_names() const {
  std::vector<std::string> out;
  for (const auto& r : results) {
    if (!r.passed) out.push_back(r.name);
  }
  return out;
}

int lift_tolerance(const Extension& ext) {
  return ext.working_precision() - ext.b2() - static_cast<int>(ext.p()) * ext.b1();
}

K2Element random_element(const ExtensionPtr& ext, std::mt19937_64& rng, int t, int extra_terms) {
  const unsigned p = ext->p();
  K2Element x = lambda_element(ext, t) * k0_integer(ext, random_integer(rng, p, 4, true));
  std::uniform_int_distribution<int> offset(1, 2 * ext->degree());
  for (int k = 0; k < extra_terms; ++k) {
    const int s = t + offset(rng);
    x += lambda_element(ext, s) * k0_integer(ext, random_integer(rng, p, 4, false));
  }
  return x;
}

SuiteReport galois_invariant_suite(const GaloisData& g, const AuditOptions& options) {
  const auto& ext = g.ext;
  const int p = static_cast<int>(ext->p());
  const int w = ext->working_precision();
  const K2Element x1 = K2Element::x1(ext);
  const K2Element x2 = K2Element::x2(ext);
  const K2Element one = K2Element::integer(ext, 1);
  const K2Element a1 = K2Element::constant(ext, ext->a1());
  const K2Element a2 = K2Element::constant(ext, ext->a2());
  const Automorphism& s1 = *g.sigma1.sigma;
  const Automorphism& s2 = *g.sigma2.sigma;
  SuiteReport rep;

  {
    const auto& t = s1.image_x1();
    const int v = (t.pow(static_cast<unsigned>(p)) - t - a1).valuation_floor();
    rep.results.push_back(result("wp_relation_x1", v >= w, vs(v, ">=", w)));
  }
  {
    const auto& t = s1.image_x2();
    const int v =
        (t.pow(static_cast<unsigned>(p)) - t - a2 - carry(s1.image_x1(), a1)).valuation_floor();
    rep.results.push_back(result("wp_relation_x2", v >= w, vs(v, ">=", w)));
  }
  {
    const int ve = (s1.image_x1() - x1 - one).valuation_floor();
    const int vd = (s1.image_x2() - x2 - carry(x1, one)).valuation_floor();
    rep.results.push_back(result("witt_congruence", ve > 0 && vd > 0,
                                 "v2(first) = " + std::to_string(ve) +
                                     ", v2(second) = " + std::to_string(vd) + ", both must be > 0"));
  }
  {
    const int expected = p * p * ext->e0() - p * (p - 1) * ext->b1();
    const int v = g.sigma1.epsilon_valuation;
    rep.results.push_back(result("epsilon_valuation", v == expected, vs(v, "==", expected)));
  }
  {
    const int v = std::min(agreement(apply_n(s1, x1, p), s2.image_x1()),
                           agreement(apply_n(s1, x2, p), s2.image_x2()));
    rep.results.push_back(result("sigma1_power_p_is_sigma2", v >= w, vs(v, ">=", w)));
  }
  {
    const int v = std::min(agreement(apply_n(s1, x1, p * p), x1),
                           agreement(apply_n(s1, x2, p * p), x2));
    rep.results.push_back(result("sigma1_order_p2", v >= w, vs(v, ">=", w)));
  }
  {
    const int fix = agreement(s2.image_x1(), x1);
    const int bound = p * p * ext->e0() + (p - 1) * p * ext->a2().valuation_or_throw();
    const int vd = g.sigma2.delta.valuation_floor();
    rep.results.push_back(result("sigma2_fixes_x1", fix >= w, vs(fix, ">=", w)));
    rep.results.push_back(result("delta_bound", vd >= bound, vs(vd, ">=", bound)));
  }
  {
    const K2Element minus_p = K2Element::integer(ext, -p);
    const int tol = lift_tolerance(*ext);
    const int ve = agreement(g.trace_k1_k0(g.sigma1.epsilon), minus_p);
    const int vd = agreement(g.trace_k2_k1(g.sigma2.delta), minus_p);
    rep.results.push_back(result("trace_epsilon_is_minus_p", ve >= tol, vs(ve, ">=", tol)));
    rep.results.push_back(result("trace_delta_is_minus_p", vd >= tol, vs(vd, ">=", tol)));
  }
  {
    bool ok = true;
    for (const auto& c : {one, a1, a2}) {
      ok = ok && g.psi.psi1(c).is_zero() && g.psi.psi2(c).is_zero();
    }
    rep.results.push_back(result("psi_kill_constants", ok, "Psi1 and Psi2 on 1, a1, a2"));
  }

  std::mt19937_64 rng(options.seed);
  std::vector<K2Element> xs;
  for (int t = 0; t < p * p; ++t) xs.push_back(lambda_element(ext, t));
  for (int k = 0; k < options.samples; ++k) {
    std::uniform_int_distribution<int> tv(-2 * p * p, 2 * p * p);
    xs.push_back(random_element(ext, rng, tv(rng)));
  }
  {
    int worst = INT_MAX;
    bool ok = true;
    for (const auto& x : xs) {
      const int v = x.valuation_or_throw();
      const int got = apply_op_n(g.psi.psi2, x, p).valuation_floor() - v;
      worst = std::min(worst, got);
      ok = ok && got >= p * p * ext->e0();
    }
    rep.results.push_back(result("psi2_power_p_growth", ok,
                                 "least v2(Psi2^p x) - v2(x) = " + std::to_string(worst) +
                                     ", bound " + std::to_string(p * p * ext->e0())));
  }

  if (options.samples > 0) {
    const int tol = lift_tolerance(*ext);
    int worst_mul = INT_MAX;
    int worst_lin = INT_MAX;
    for (int k = 0; k < options.samples; ++k) {
      std::uniform_int_distribution<int> tv(-2 * p * p, 2 * p * p);
      const K2Element x = random_element(ext, rng, tv(rng));
      const K2Element y = random_element(ext, rng, tv(rng));
      const int vxy = x.valuation_or_throw() + y.valuation_or_throw();
      worst_mul = std::min(worst_mul, agreement(s1.apply(x * y), s1.apply(x) * s1.apply(y)) - vxy);
      const K0Element c = k0_integer(ext, random_integer(rng, static_cast<unsigned>(p), 4, true));
      for (const auto* op : {&g.psi.psi1, &g.psi.psi2}) {
        const int d = agreement((*op)(x * c + y), (*op)(x) * c + (*op)(y)) -
                      std::min(x.valuation_or_throw(), y.valuation_or_throw());
        worst_lin = std::min(worst_lin, d);
      }
    }
    rep.results.push_back(result("sigma1_multiplicative", worst_mul >= tol,
                                 "least relative agreement " + vs(worst_mul, ">=", tol)));
    rep.results.push_back(result("psi_linear", worst_lin >= tol,
                                 "least relative agreement " + vs(worst_lin, ">=", tol)));
  }
  return rep;
}

std::vector<DigitDropRow> digit_drop_rows(const ScaffoldTables& t, const PsiOperators& psi,
                                          const ExtensionPtr& ext, int scaffold_precision,
                                          bool negate_index) {
  const int n = t.size();
  std::vector<DigitDropRow> rows;
  for (int s = 0; s < n; ++s) {
    const K2Element lam = lambda_element(ext, s);
    const int idx = negate_index ? t.shift_index(s) : t.a_map[static_cast<std::size_t>(s)];
    for (int i = 1; i <= 2; ++i) {
      DigitDropRow row;
      row.t = s;
      row.index = idx;
      row.psi = i;
      row.digit = i == 1 ? idx / t.p : idx % t.p;
      row.expected = s + (i == 1 ? t.p * t.b1 : t.b2);
      row.valuation = (i == 1 ? psi.psi1(lam) : psi.psi2(lam)).valuation_floor();
      row.passed = row.digit >= 1 ? row.valuation == row.expected
                                  : row.valuation >= row.expected + scaffold_precision;
      rows.push_back(row);
    }
  }
  return rows;
}

int valuation_law_mismatches(const ScaffoldTables& t, const PsiOperators& psi,
                             const std::vector<K2Element>& alphas, std::string* first_failure) {
  int bad = 0;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const int va = alphas[k].valuation_or_throw();
    K2Element z2 = alphas[k];
    for (int j = 0; j < t.p; ++j) {
      K2Element z = z2;
      for (int i = 0; i < t.p; ++i) {
        const int expected = va + j * t.b2 + i * t.p * t.b1;
        const auto got = z.valuation();
        if (got != std::optional<int>(expected)) {
          if (bad == 0 && first_failure) {
            *first_failure = "sample " + std::to_string(k) + ", (i, j) = (" + std::to_string(i) +
                             ", " + std::to_string(j) + "): v2 = " +
                             (got ? std::to_string(*got) : std::string("indeterminate")) +
                             ", expected " + std::to_string(expected);
          }
          ++bad;
        }
        z = psi.psi1(z);
      }
      z2 = psi.psi2(z2);
    }
  }
  return bad;
}

SuiteReport structure_invariant_suite(const GaloisData& g, const RamificationData& rd,
                                      const FreenessBound& bound, const ScaffoldTables& tables,
                                      const RhoFamily& family, const AuditOptions& options) {
  const auto& ext = g.ext;
  const int p = tables.p;
  const int n = tables.size();
  SuiteReport rep;

  {
    const auto oracle = w_by_valuations(tables);
    rep.results.push_back(result("w_oracle", oracle == tables.w, "w from valuations vs w from d"));
  }
  rep.results.push_back(result("normal_basis_rank", family.normal_basis_rank == n,
                               vs(family.normal_basis_rank, "==", n)));
  {
    const K2Element lhs = apply_op_n(g.psi.psi1, family.rho, p);
    const int modulus = p * p * ext->e0() + p * rd.b1 - (p - 1) * rd.b2;
    const int v = (lhs - g.psi.psi2(family.rho)).valuation_floor();
    rep.results.push_back(result("psi1_power_p_congruence", v >= modulus, vs(v, ">=", modulus)));
    if (bound.holds) {
      const int vl = lhs.valuation_floor();
      rep.results.push_back(
          result("psi1_power_p_valuation", vl == 2 * rd.b2, vs(vl, "==", 2 * rd.b2)));
    }
  }
  {
    const auto rows = digit_drop_rows(tables, g.psi, ext, rd.precision_c);
    const auto bad = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.passed; });
    rep.results.push_back(result("digit_drop", bad == 0,
                                 std::to_string(rows.size() - static_cast<std::size_t>(bad)) + "/" +
                                     std::to_string(rows.size()) + " rows as predicted"));
  }
  {
    std::vector<K2Element> alphas;
    for (int k = -1; k <= 1; ++k) alphas.push_back(lambda_element(ext, rd.b2 + k * n));
    std::mt19937_64 rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<int> shift(-2, 2);
    for (int k = 0; k < options.samples; ++k) {
      alphas.push_back(random_element(ext, rng, rd.b2 + n * shift(rng)));
    }
    std::string first;
    const int bad = valuation_law_mismatches(tables, g.psi, alphas, &first);
    rep.results.push_back(result("valuation_law", bad == 0,
                                 std::to_string(alphas.size()) + " elements, " +
                                     std::to_string(bad) + " mismatches" +
                                     (first.empty() ? "" : "; " + first)));
  }
  if (!bound.holds) {
    rep.results.push_back(result("freeness_agreement", true, "freeness bound fails; no verdict"));
    return rep;
  }
  try {
    const auto m = associated_order_and_freeness(tables, bound, g.psi, family.rho0);
    rep.results.push_back(result("freeness_agreement", true,
                                 std::string("all three criteria give ") +
                                     (m.free ? "free" : "not free")));
  } catch (const InternalDisagreement& e) {
    rep.results.push_back(result("freeness_agreement", false, e.what()));
  }
  {
    AuditInput in{&tables, &g.psi, &family, bound.congruence_modulus,
                  equality_threshold(tables, family)};
    const auto audit = congruence_audit(in);
    const auto failures = audit.failures();
    rep.results.push_back(result("congruence_audit", audit.passed(),
                                 failures.empty() ? std::to_string(audit.pairs.size()) + " pairs hold"
                                                  : failures.front()));
  }
  return rep;
}

}  // namespace asw
