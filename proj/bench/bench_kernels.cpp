// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include "rieffel/gammaprod.hpp"
#include "rieffel/kernels.hpp"

using namespace rieffel;
using namespace rieffel::kernels;

namespace {

template <bool Parallel>
void BM_TwoLeg(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const Mat t = random_matrix(rng, n * n, n * n);
  const Vec v = random_vector(rng, n * n * n);
  Vec out(v.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      apply_two_leg_omp(t, Legs::L13, n, v.data(), out.data());
    else
      apply_two_leg_serial(t, Legs::L13, n, v.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n) * n * n * n * n);
}

template <bool Parallel>
void BM_CrossedMultiply(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto ds = translation_system(FiniteAbelianGroup({k, k}));
  const CrossedAmbient amb(ds.gamma(), ds.unitaries());
  Rng rng(2);
  const Vec x = random_vector(rng, amb.coord_dim()), y = random_vector(rng, amb.coord_dim());
  Vec out(x.size());
  for (auto _ : state) {
    if constexpr (Parallel)
      crossed_multiply_omp(amb.table(), x.data(), y.data(), out.data());
    else
      crossed_multiply_serial(amb.table(), x.data(), y.data(), out.data());
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_ProbeResidual(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(3);
  const Mat a = random_matrix(rng, d, d), b = random_matrix(rng, d, d);
  const LinearMap fa = [&](const Vec& v) { return Vec(a * v); };
  const LinearMap fb = [&](const Vec& v) { return Vec(b * v); };
  for (auto _ : state) {
    const double r = Parallel ? probe_residual_omp(fa, fb, d, 16, 0) : probe_residual_serial(fa, fb, d, 16, 0);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_TwoLeg<false>)->Arg(8)->Arg(16);
BENCHMARK(BM_TwoLeg<true>)->Arg(8)->Arg(16)->UseRealTime();
BENCHMARK(BM_CrossedMultiply<false>)->Arg(3)->Arg(4);
BENCHMARK(BM_CrossedMultiply<true>)->Arg(3)->Arg(4)->UseRealTime();
BENCHMARK(BM_ProbeResidual<false>)->Arg(512);
BENCHMARK(BM_ProbeResidual<true>)->Arg(512)->UseRealTime();

BENCHMARK_MAIN();
