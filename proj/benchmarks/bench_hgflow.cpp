#include <benchmark/benchmark.h>

#include <vector>

#include <hgflow/hamiltonian.hpp>
#include <hgflow/hgsolution.hpp>
#include <hgflow/params.hpp>
#include <hgflow/pfaffian.hpp>
#include <hgflow/series.hpp>

using hgflow::cplx;

namespace {

hgflow::HGParams sample_hg(int L, int N) {
  return hgflow::map_system_to_hg(hgflow::random_params(11, L, N, false));
}

void BM_SeriesCoefficients(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const int N = static_cast<int>(state.range(1));
  const int M = static_cast<int>(state.range(2));
  const auto hp = sample_hg(L, N);
  for (auto _ : state) benchmark::DoNotOptimize(hgflow::series_coefficients(hp, M));
}
BENCHMARK(BM_SeriesCoefficients)->Args({3, 1, 80})->Args({3, 2, 80})->Args({4, 3, 20})->Args({4, 3, 40});

void BM_OmegaAt(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const int N = static_cast<int>(state.range(1));
  const auto pc = hgflow::build_connection(sample_hg(L, N));
  std::vector<cplx> x(N);
  for (int i = 0; i < N; ++i) x[i] = cplx(0.1 + 0.15 * i, 0.05 * (i + 1));
  for (auto _ : state) benchmark::DoNotOptimize(hgflow::omega_at(pc, x));
}
BENCHMARK(BM_OmegaAt)->Args({2, 1})->Args({3, 2})->Args({4, 3});

void BM_ContinueSolution(benchmark::State& state) {
  const int L = 3;
  const int N = 2;
  const auto hp = sample_hg(L, N);
  const auto pc = hgflow::build_connection(hp);
  const auto sol = hgflow::holomorphic_solution(hp, 40);
  const std::vector<cplx> a{0.05, 0.025};
  const std::vector<cplx> b{cplx(0.3, 0.2), cplx(0.1, -0.2)};
  const auto y0 = hgflow::evaluate_solution(sol, L, a);
  const hgflow::PathSpec path{{a, b}};
  const double tol = state.range(0) == 0 ? 1e-8 : 1e-10;
  for (auto _ : state) benchmark::DoNotOptimize(hgflow::continue_solution(pc, path, y0, tol));
}
BENCHMARK(BM_ContinueSolution)->Arg(0)->Arg(1);

void BM_CanonicalVectorField(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const int N = static_cast<int>(state.range(1));
  const auto sp = hgflow::random_params(5, L, N, false);
  hgflow::PhasePoint pt(L, N);
  for (int k = 0; k < pt.dim(); ++k) {
    pt.qs()(k) = cplx(0.2 + 0.1 * k, -0.1);
    pt.ps()(k) = cplx(0.3, 0.05 * k);
  }
  std::vector<cplx> x(N);
  for (int i = 0; i < N; ++i) x[i] = cplx(0.2 + 0.2 * i, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(hgflow::canonical_vector_field(x, pt, sp));
}
BENCHMARK(BM_CanonicalVectorField)->Args({2, 1})->Args({3, 2})->Args({4, 3});

}  // namespace

BENCHMARK_MAIN();
