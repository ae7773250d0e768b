#pragma once

#include <memory>

#include "asw/audit.hpp"
#include "asw/construction.hpp"
#include "asw/galois.hpp"
#include "asw/padic.hpp"
#include "asw/structure.hpp"
#include "asw/tower.hpp"

namespace fixtures {

constexpr int kInputPrecision = 4096;

inline asw::K0Element pi_power(const asw::BaseFieldPtr& f, int k, long c = 1) {
  return asw::K0Element::monomial(f, c, k, k + kInputPrecision);
}

/// Full pipeline for a1 = pi0^ka, mu = pi0^km over Q_p(pi0), pi0^e0 = p.
struct Scenario {
  asw::BaseFieldPtr field;
  asw::ExtensionPtr ext;
  asw::RamificationData rd;
  asw::FreenessBound fb;
  asw::ScaffoldTables tables;
  asw::GaloisData g;
  asw::RhoFamily family;
};

inline std::unique_ptr<Scenario> make_scenario(unsigned p, int e0, int ka, int km,
                                               const asw::GaloisOptions& options = {}) {
  auto s = std::make_unique<Scenario>();
  s->field = asw::make_base_field(p, e0);
  s->ext = asw::Extension::create(s->field, pi_power(s->field, ka), pi_power(s->field, km));
  s->rd = asw::ramification_data(*s->ext);
  s->fb = asw::check_freeness_bound(s->rd, *s->field);
  s->tables = asw::build_tables(s->rd, static_cast<int>(p));
  s->g = asw::build_galois(s->ext, options);
  s->family = asw::rho_family(s->tables, s->g.psi, asw::uniformizer_k2(s->ext, s->tables.r_b2));
  return s;
}

/// p = 3, e0 = 6, a1 = mu = pi0^-1.
inline const Scenario& worked_example() {
  static const auto s = make_scenario(3, 6, -1, -1);
  return *s;
}

/// p = 2, e0 = 4, a1 = mu = pi0^-1.
inline const Scenario& dyadic_example() {
  static const auto s = make_scenario(2, 4, -1, -1);
  return *s;
}

/// p = 3, e0 = 22, a1 = mu = pi0^-5: bound holds but the module is not free.
inline const Scenario& non_free_example() {
  static const auto s = make_scenario(3, 22, -5, -5);
  return *s;
}

}  // namespace fixtures
