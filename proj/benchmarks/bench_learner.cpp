#include <benchmark/benchmark.h>

#include "qcn/generation.hpp"
#include "qcn/learner.hpp"
#include "qcn/oracle.hpp"

namespace {

void run_learner(benchmark::State& state, qcn::PropagationKind prop, qcn::Heuristic h) {
  qcn::GenConfig gen;
  gen.n = static_cast<int>(state.range(0));
  gen.seed = 5;
  const qcn::GeneratedTarget t = qcn::generate_target(gen);
  const auto calc = qcn::interval_algebra();
  std::size_t queries = 0;
  for (auto _ : state) {
    qcn::SimulatedOracle oracle(t.oracle_view, qcn::OracleConfig{});
    qcn::LearnerConfig cfg;
    cfg.propagation = prop;
    cfg.heuristic = h;
    cfg.seed = 9;
    const auto r = qcn::learn(cfg, oracle, calc, gen.n, &t.oracle_view);
    queries = r.stats.queries;
    benchmark::DoNotOptimize(r.network);
  }
  state.counters["queries"] = static_cast<double>(queries);
}

void BM_LearnNoPropagation(benchmark::State& s) { run_learner(s, qcn::PropagationKind::none, qcn::Heuristic::random); }
void BM_LearnPc(benchmark::State& s) { run_learner(s, qcn::PropagationKind::pc, qcn::Heuristic::random); }
void BM_LearnPcCardinality(benchmark::State& s) {
  run_learner(s, qcn::PropagationKind::pc, qcn::Heuristic::cardinality);
}

}  // namespace

BENCHMARK(BM_LearnNoPropagation)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LearnPc)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LearnPcCardinality)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
