#include <benchmark/benchmark.h>

#include "springer/bundle.hpp"
#include "springer/diagram.hpp"
#include "springer/oracle.hpp"
#include "springer/quiver.hpp"

using namespace springer;

static void BM_EnumerateTypeA(benchmark::State& st) {
  int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_typeA(n, n / 2));
}
BENCHMARK(BM_EnumerateTypeA)->DenseRange(8, 14, 2);

static void BM_EnumerateTypeD(benchmark::State& st) {
  int n = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_typeD(n, n / 2));
}
BENCHMARK(BM_EnumerateTypeD)->DenseRange(8, 14, 2);

static void BM_BuildFlag(benchmark::State& st) {
  const Field f = Field::Fp(5);
  MarkedCupDiagram adot = parse_typeD("D m=5 cups=2: 1-2, 3*, 4-5*");
  auto pts = p1_points(f);
  std::size_t i = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(build_flag(f, adot, {pts[i % pts.size()], pts[(i / pts.size()) % pts.size()]}));
    ++i;
  }
}
BENCHMARK(BM_BuildFlag);

// the sampler draws A at random and solves for B; for n >= 8 it rarely reaches a stable point
static void BM_MaffeiFlag(benchmark::State& st) {
  const Field f = Field::Fp(7);
  int n = static_cast<int>(st.range(0));
  auto r = sample_springer_point(f, n, n / 2, std::nullopt, 1);
  if (!r) {
    st.SkipWithError("no sample");
    return;
  }
  for (auto _ : st) benchmark::DoNotOptimize(maffei_flag(*r));
}
BENCHMARK(BM_MaffeiFlag)->Arg(4)->Arg(6);

static void BM_DecomposeTypeD(benchmark::State& st) {
  int n = static_cast<int>(st.range(0));
  EnumerationTask t{Shape::from_nk(n, n / 2), Field::Fp(3), true, 10'000'000, 1};
  auto ds = enumerate_typeD(n, n / 2);
  for (auto _ : st) benchmark::DoNotOptimize(decompose(t, ds));
}
BENCHMARK(BM_DecomposeTypeD)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_DecomposeTypeA(benchmark::State& st) {
  int n = static_cast<int>(st.range(0));
  EnumerationTask t{Shape::from_nk(n, 2), Field::Fp(2), false, 10'000'000, 1};
  auto ds = enumerate_typeA(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(decompose(t, ds));
}
BENCHMARK(BM_DecomposeTypeA)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
