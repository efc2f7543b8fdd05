#include <benchmark/benchmark.h>

#include "mink/minkowski.hpp"
#include "mink/verify.hpp"

namespace {

using namespace mink;

Matrix instance(Index n) {
  GenSpec s;
  s.rows = n;
  s.cols = n;
  s.rank = n / 2;
  s.seed = 7;
  return generate(s);
}

void BM_Diagnose(benchmark::State& state) {
  const Matrix a = instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(diagnose_existence(a));
}
BENCHMARK(BM_Diagnose)->Arg(8)->Arg(32)->Arg(96);

template <Algorithm algo>
void BM_Inverse(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix a = instance(n);
  Rng rng(1);
  const Matrix w = rng.gaussian(n, n);
  for (auto _ : state) {
    switch (algo) {
      case Algorithm::FRF: benchmark::DoNotOptimize(mink_inverse_frf(a)); break;
      case Algorithm::HS: benchmark::DoNotOptimize(mink_inverse_hs(a)); break;
      case Algorithm::Zlobec: benchmark::DoNotOptimize(mink_inverse_zlobec(a, 0, 0, w)); break;
      case Algorithm::Group: benchmark::DoNotOptimize(mink_inverse_group(a)); break;
      case Algorithm::Resolvent: benchmark::DoNotOptimize(mink_inverse_resolvent(a, w)); break;
      default: benchmark::DoNotOptimize(mink_inverse_compose(a)); break;
    }
  }
}
BENCHMARK(BM_Inverse<Algorithm::FRF>)->Arg(8)->Arg(32)->Arg(96);
BENCHMARK(BM_Inverse<Algorithm::HS>)->Arg(8)->Arg(32)->Arg(96);
BENCHMARK(BM_Inverse<Algorithm::Zlobec>)->Arg(8)->Arg(32)->Arg(96);
BENCHMARK(BM_Inverse<Algorithm::Group>)->Arg(8)->Arg(32)->Arg(96);
BENCHMARK(BM_Inverse<Algorithm::Resolvent>)->Arg(8)->Arg(32)->Arg(96);
BENCHMARK(BM_Inverse<Algorithm::Compose13m14m>)->Arg(8)->Arg(32)->Arg(96);

void BM_CrossCheck(benchmark::State& state) {
  const Matrix a = instance(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cross_check(a));
}
BENCHMARK(BM_CrossCheck)->Arg(8)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
