#include <benchmark/benchmark.h>

#include "collatz/analysis.hpp"
#include "collatz/codebook.hpp"
#include "collatz/kernel.hpp"
#include "collatz/paths.hpp"
#include "collatz/rules.hpp"

using namespace collatz;

static void BM_Step(benchmark::State& state) {
  Nat h = 837799;
  for (auto _ : state) {
    Nat v = step(h);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_Step);

static void BM_StepChecked(benchmark::State& state) {
  std::uint64_t h = 837799;
  for (auto _ : state) {
    auto v = step_checked(h);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_StepChecked);

static void BM_Trajectory(benchmark::State& state) {
  Nat h1(state.range(0));
  for (auto _ : state) {
    Trajectory t = run_trajectory(h1);
    benchmark::DoNotOptimize(t.values.data());
  }
}
BENCHMARK(BM_Trajectory)->Arg(27)->Arg(1639)->Arg(837799);

static void BM_AuditOne(benchmark::State& state) {
  Nat h1(state.range(0));
  for (auto _ : state) {
    StartRecord r = audit_one(h1);
    benchmark::DoNotOptimize(r.steps);
  }
}
BENCHMARK(BM_AuditOne)->Arg(27)->Arg(1639);

static void BM_RangeAudit(benchmark::State& state) {
  for (auto _ : state) {
    RangeAuditReport r = range_audit(1, static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(r.starts);
  }
}
BENCHMARK(BM_RangeAudit)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_DerivedCodebook(benchmark::State& state) {
  for (auto _ : state) {
    Codebook book = generate_derived_codebook(4096);
    benchmark::DoNotOptimize(book.rows.size());
  }
}
BENCHMARK(BM_DerivedCodebook)->Unit(benchmark::kMillisecond);

static void BM_EnumerateDerivedPaths(benchmark::State& state) {
  Codebook book = generate_derived_codebook(4096);
  ReturnSubgraph g = build_return_subgraph(book);
  for (auto _ : state) {
    std::size_t n = 0;
    enumerate_return_paths(g, [&](const ReturnPath&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_EnumerateDerivedPaths)->Unit(benchmark::kMillisecond);

static void BM_CycleAudit(benchmark::State& state) {
  Codebook book = generate_derived_codebook(4096);
  ReturnSubgraph g = build_return_subgraph(book);
  for (auto _ : state) {
    CycleReport r = cycle_weight_audit(g);
    benchmark::DoNotOptimize(r.cycle_count);
  }
}
BENCHMARK(BM_CycleAudit)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
