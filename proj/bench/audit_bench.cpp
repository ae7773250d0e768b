// Serial reference against the OpenMP audit kernel on the same (j, r) grid.
#include <benchmark/benchmark.h>

#include "fixtures.hpp"

namespace {

asw::AuditInput input_for(const fixtures::Scenario& s) {
  return {&s.tables, &s.g.psi, &s.family, s.fb.congruence_modulus,
          asw::equality_threshold(s.tables, s.family)};
}

const fixtures::Scenario& scenario(int which) {
  return which == 0 ? fixtures::worked_example() : fixtures::non_free_example();
}

void BM_AuditSerial(benchmark::State& state) {
  const auto in = input_for(scenario(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(asw::congruence_audit_serial(in));
}

void BM_AuditParallel(benchmark::State& state) {
  const auto in = input_for(scenario(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(asw::congruence_audit(in));
}

}  // namespace

// Argument 0: worked example (b2 = 10); 1: larger breaks (b2 = 50).
BENCHMARK(BM_AuditSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AuditParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
