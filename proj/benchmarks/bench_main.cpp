#include <benchmark/benchmark.h>

#include "cp3/correlations.hpp"
#include "cp3/kernels.hpp"
#include "cp3/potentials.hpp"
#include "cp3/quadrature.hpp"

namespace {

using namespace cp3;

void BM_FApply(benchmark::State& state) {
  const auto ker = RadialKernel::cos_over_r(1.3);
  const Vec3 R{0.7, -0.4, 1.1};
  for (auto _ : state) benchmark::DoNotOptimize(f_apply(ker, R));
}
BENCHMARK(BM_FApply);

void BM_SemiInfiniteQuadrature(benchmark::State& state) {
  QuadratureSpec spec;
  const auto f = [](double u) { return std::exp(-2.0 * u) / (1.0 + u * u); };
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_semi_infinite(f, 2.0, spec).value);
}
BENCHMARK(BM_SemiInfiniteQuadrature);

void BM_CorrelationTensor(benchmark::State& state) {
  const SourceAtom atom{{0, 0, 0}, {AtomState::Excited, 1.0, {0, 0, 1}}};
  QuadratureSpec spec;
  const Vec3 r{1.2, 0.3, 0.4}, rp{-0.5, 0.8, 0.6};
  for (auto _ : state)
    benchmark::DoNotOptimize(correlation_tensor(r, rp, atom, spec).tensor);
}
BENCHMARK(BM_CorrelationTensor);

void BM_ThreeBodyClosed(benchmark::State& state) {
  const auto t = triangle_from_positions({0, 0, 0}, {2, 0, 0}, {1, 1.5, 0});
  const PolarizabilityModel A{AtomState::Ground, 1.7, {0, 0, 0.8}};
  const PolarizabilityModel B{AtomState::Ground, 2.3, {0, 0, 0.6}};
  const PolarizabilityModel C{AtomState::Excited, 1.0, {0.2, 0.3, 0.5}};
  QuadratureSpec spec;
  for (auto _ : state)
    benchmark::DoNotOptimize(three_body_closed(t, A, B, C, spec).total);
}
BENCHMARK(BM_ThreeBodyClosed);

void BM_ThreeBodySymmetrized(benchmark::State& state) {
  const auto t = triangle_from_positions({0, 0, 0}, {2, 0, 0}, {1, 1.5, 0});
  const PolarizabilityModel A{AtomState::Ground, 1.7, {0, 0, 0.8}};
  const PolarizabilityModel B{AtomState::Ground, 2.3, {0, 0, 0.6}};
  const PolarizabilityModel C{AtomState::Excited, 1.0, {0.2, 0.3, 0.5}};
  QuadratureSpec spec;
  for (auto _ : state)
    benchmark::DoNotOptimize(three_body_symmetrized(t, A, B, C, spec).total);
}
BENCHMARK(BM_ThreeBodySymmetrized);

}  // namespace

BENCHMARK_MAIN();
