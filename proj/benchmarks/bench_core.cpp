#include <benchmark/benchmark.h>

#include <random>

#include "polydil/generators.hpp"
#include "polydil/linalg.hpp"
#include "polydil/realization.hpp"
#include "polydil/vonneumann.hpp"

using namespace polydil;

namespace {

CMatrix random_hermitian(std::size_t n) {
  std::mt19937_64 rng(n);
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a(r, c) = cplx(g(rng), g(rng));
  CMatrix h = a + a.adjoint();
  h *= 0.5;
  return h;
}

void BM_HermEig(benchmark::State& state) {
  const CMatrix a = random_hermitian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(a));
}
BENCHMARK(BM_HermEig)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_TransferGrid(benchmark::State& state) {
  const auto ct = product_triple(jordan_pair(3, 3, 0.9, 0.9), 1, 1);
  const auto r = build_generating_unitary(ct.tuple, ct.cert);
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(make_torus_grid(r.blocks, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid * grid));
}
BENCHMARK(BM_TransferGrid)->Arg(16)->Arg(32);

void BM_VnCheck(benchmark::State& state) {
  const auto ct = product_triple(jordan_pair(3, 3, 0.9, 0.9), 1, 1);
  RunConfig config;
  const VNContext ctx = make_vn_context(ct.tuple, ct.cert, config);
  std::mt19937_64 rng(config.seed);
  const MultiPoly p = random_poly(rng, 3, 3);
  for (auto _ : state) benchmark::DoNotOptimize(vn_check(p, ct.tuple, ctx, config));
}
BENCHMARK(BM_VnCheck);

}  // namespace

BENCHMARK_MAIN();
