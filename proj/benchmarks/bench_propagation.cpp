#include <benchmark/benchmark.h>

#include "qcn/generation.hpp"
#include "qcn/propagation.hpp"

namespace {

// Case 2 targets leave a share of edges universal, which gives PC real work.
qcn::Qcn case2_target(int n) {
  qcn::GenConfig cfg;
  cfg.n = n;
  cfg.learning_case = 2;
  cfg.p_universal = 0.5;
  cfg.seed = 17;
  return qcn::generate_target(cfg).target;
}

void BM_PathConsistency(benchmark::State& state) {
  const qcn::Qcn base = case2_target(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    qcn::Qcn q = base;
    benchmark::DoNotOptimize(qcn::path_consistency(q));
  }
}

void BM_PathConsistencyNaiveComposition(benchmark::State& state) {
  const qcn::Qcn base = case2_target(static_cast<int>(state.range(0)));
  qcn::PropagationOptions opts;
  opts.composition = qcn::CompositionMode::naive;
  for (auto _ : state) {
    qcn::Qcn q = base;
    benchmark::DoNotOptimize(qcn::path_consistency(q, opts));
  }
}

void BM_PartialPathConsistency(benchmark::State& state) {
  const qcn::Qcn base = case2_target(static_cast<int>(state.range(0)));
  const qcn::ChordalStructure cs = qcn::triangulate(base);
  for (auto _ : state) {
    qcn::Qcn q = base;
    benchmark::DoNotOptimize(qcn::partial_path_consistency(q, cs));
  }
}

void BM_Triangulate(benchmark::State& state) {
  const qcn::Qcn base = case2_target(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qcn::triangulate(base));
}

}  // namespace

BENCHMARK(BM_PathConsistency)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PathConsistencyNaiveComposition)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PartialPathConsistency)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Triangulate)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);
