#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qcn/algebra.hpp"

namespace {

std::vector<qcn::Relation> random_relations(const qcn::Calculus& calc, std::size_t count) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint32_t> bits(1, calc.universal().bits());
  std::vector<qcn::Relation> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(qcn::Relation(bits(rng) & calc.universal().bits()));
  return out;
}

void BM_Compose(benchmark::State& state, qcn::CalculusPtr calc) {
  const auto rels = random_relations(*calc, 1024);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(calc->compose(rels[k & 1023], rels[(k * 7 + 3) & 1023]));
    ++k;
  }
}

void BM_ComposeWithin(benchmark::State& state, qcn::CalculusPtr calc) {
  const auto rels = random_relations(*calc, 1024);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(calc->compose_within(rels[k & 1023], rels[(k * 7 + 3) & 1023], rels[(k * 13 + 5) & 1023]));
    ++k;
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_Compose, ia, qcn::interval_algebra());
BENCHMARK_CAPTURE(BM_Compose, rcc8, qcn::rcc8());
BENCHMARK_CAPTURE(BM_ComposeWithin, ia, qcn::interval_algebra());
BENCHMARK_CAPTURE(BM_ComposeWithin, rcc8, qcn::rcc8());
