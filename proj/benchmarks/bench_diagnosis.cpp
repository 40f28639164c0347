#include <benchmark/benchmark.h>

#include "pndiag/diagnose.hpp"
#include "pndiag/explain.hpp"
#include "pndiag/fixtures.hpp"

namespace {

using namespace pndiag;

Observation faulty_observation(const NetSystem& net, std::size_t trailing_e) {
  Observation o;
  for (const char* n : {"A", "B", "D"}) o.events.push_back(*net.find_transition(n));
  o.events.insert(o.events.end(), trailing_e, *net.find_transition("E"));
  return o;
}

void BM_ExplainOrdered(benchmark::State& state) {
  const NetSystem net = fixtures::figure1();
  const Observation o = faulty_observation(net, static_cast<std::size_t>(state.range(0)));
  const SearchBudget budget = SearchBudget::defaults(net);
  for (auto _ : state) benchmark::DoNotOptimize(explain_ordered(net, o, budget));
}
BENCHMARK(BM_ExplainOrdered)->Arg(0)->Arg(10)->Arg(100);

void BM_ExplainMultiset(benchmark::State& state) {
  const NetSystem net = fixtures::figure1();
  const ObservationMultiset ms =
      to_multiset(faulty_observation(net, static_cast<std::size_t>(state.range(0))));
  const SearchBudget budget = SearchBudget::defaults(net);
  for (auto _ : state) benchmark::DoNotOptimize(explain_multiset(net, ms, budget));
}
BENCHMARK(BM_ExplainMultiset)->Arg(0)->Arg(10)->Arg(100);

void BM_DiagnoseEfficient(benchmark::State& state) {
  const NetSystem net = fixtures::figure1();
  const Observation o = faulty_observation(net, static_cast<std::size_t>(state.range(0)));
  const SearchBudget budget = SearchBudget::defaults(net);
  for (auto _ : state) benchmark::DoNotOptimize(diagnose_efficient(net, o, budget));
}
BENCHMARK(BM_DiagnoseEfficient)->Arg(10)->Arg(50);

void BM_PrecisionCheck(benchmark::State& state) {
  const NetSystem net = fixtures::figure1();
  const SearchBudget budget = SearchBudget::defaults(net);
  for (auto _ : state) {
    benchmark::DoNotOptimize(precision_check(net, static_cast<std::size_t>(state.range(0)), budget));
  }
}
BENCHMARK(BM_PrecisionCheck)->Arg(6)->Arg(12);

void BM_EnumerateRuns(benchmark::State& state) {
  const NetSystem net = fixtures::figure1();
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_runs(net, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_EnumerateRuns)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
