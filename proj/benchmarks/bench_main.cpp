#include <benchmark/benchmark.h>

#include <numbers>

#include "fracns/forcing.hpp"
#include "fracns/liouville.hpp"
#include "fracns/memory.hpp"
#include "fracns/random.hpp"
#include "fracns/solver.hpp"
#include "fracns/spectral.hpp"
#include "fracns/transform.hpp"

using namespace fracns;

namespace {

constexpr double kBox = 2.0 * std::numbers::pi;

SpectralField sample_field(int n) {
  Rng rng(7);
  return random_band_field(Grid(n, kBox), 3, 1.0, n / 4.0, rng, true);
}

void BM_TransformForward(benchmark::State& state) {
  const auto u = transform_inverse(sample_field(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(transform_forward(u));
}
BENCHMARK(BM_TransformForward)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_TransformInverse(benchmark::State& state) {
  const auto uh = sample_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(transform_inverse(uh));
}
BENCHMARK(BM_TransformInverse)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FractionalLaplacian(benchmark::State& state) {
  const auto uh = sample_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fractional_laplacian(uh, 0.75));
}
BENCHMARK(BM_FractionalLaplacian)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_AdvectiveTerm(benchmark::State& state) {
  const auto uh = sample_field(static_cast<int>(state.range(0)));
  const auto u = transform_inverse(uh);
  for (auto _ : state) benchmark::DoNotOptimize(advective_term_spectral(u, uh));
}
BENCHMARK(BM_AdvectiveTerm)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ApplyT(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid g(n, kBox);
  ForcingSpec spec;
  spec.kind = ForcingKind::taylor_green_like;
  spec.norm_target = 0.05;
  SolverParams p;
  p.R = 0.45 * kBox;
  const auto f = make_forcing(g, spec, p.alpha);
  auto u = sample_field(n);
  u *= 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(apply_T(u, f, p));
}
BENCHMARK(BM_ApplyT)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_TruncatedTerms(benchmark::State& state) {
  const Grid g(64, 64.0);
  const auto u = gaussian_curl_field(g, 2.0);
  const auto p = transform_inverse(pressure_from_samples(u));
  for (auto _ : state) benchmark::DoNotOptimize(truncated_terms(u, p, 1.0, 20.0));
}
BENCHMARK(BM_TruncatedTerms)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  retain_large_allocations();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
