#include <benchmark/benchmark.h>

#include "galmod/dvr_lattice.hpp"
#include "galmod/orders.hpp"
#include "galmod/sampling.hpp"
#include "galmod/tensor_square.hpp"
#include "galmod/tower.hpp"

using namespace galmod;

namespace {

VMatrix random_matrix(int p, int n, std::uint64_t seed) {
  Rng rng(seed);
  VMatrix m(p, n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m.at(r, c) = random_poly(rng, p, -4, 28).truncated(64);
  }
  m.at(0, 0) = Series::monomial(p, 1, -5);
  return m;
}

template <bool Parallel>
void BM_Eliminate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VMatrix m = random_matrix(3, n, 1);
  const Series pinv = inverse_rel(m.at(0, 0), 64);
  for (auto _ : state) {
    VMatrix a = m;
    const int b = Parallel ? kernels::eliminate_parallel(a, 0, 0, pinv, 1)
                           : kernels::eliminate_serial(a, 0, 0, pinv, 1);
    benchmark::DoNotOptimize(b);
  }
}

template <bool Parallel>
void BM_Smith(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VMatrix m = random_matrix(3, n, 2);
  set_parallel_elimination(Parallel);
  for (auto _ : state) benchmark::DoNotOptimize(smith(m, 64).rank);
  set_parallel_elimination(true);
}

void BM_BuildTower(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(FieldTower::build(3, 1, 2).depth());
}

void BM_OrderLattice(benchmark::State& state) {
  const FieldTower t = FieldTower::build(3, 1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(assoc_order_lattice(t, 2, 5).rank());
}

void BM_PhiInverse(benchmark::State& state) {
  const FieldTower t = FieldTower::build(3, 1, 2);
  Rng rng(3);
  const AlgebraElem f = random_kg(rng, t, -2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(phi_inv(f).n());
}

}  // namespace

BENCHMARK(BM_Eliminate<false>)->Arg(9)->Arg(27)->Arg(81);
BENCHMARK(BM_Eliminate<true>)->Arg(9)->Arg(27)->Arg(81);
BENCHMARK(BM_Smith<false>)->Arg(9)->Arg(27);
BENCHMARK(BM_Smith<true>)->Arg(9)->Arg(27);
BENCHMARK(BM_BuildTower);
BENCHMARK(BM_OrderLattice);
BENCHMARK(BM_PhiInverse);

BENCHMARK_MAIN();
