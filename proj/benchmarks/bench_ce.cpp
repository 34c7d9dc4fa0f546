#include <benchmark/benchmark.h>

#include "cehom/ce_complex.hpp"

namespace {

using namespace cehom;

const TensorLieAlgebra& torus_over(const Field& field) {
  static const TensorLieAlgebra rational = make_tensor_lie(Surface::torus(),
                                                           Field{FieldSpec::rationals()}, 7);
  static const TensorLieAlgebra mod5 = make_tensor_lie(Surface::torus(),
                                                       Field{FieldSpec::prime(5)}, 7);
  return field.is_prime_field() ? mod5 : rational;
}

void BM_BuildComplex(benchmark::State& state) {
  Field field{FieldSpec::rationals()};
  const TensorLieAlgebra& g = torus_over(field);
  const int weight = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_ce_complex(g, weight));
}

void BM_HomologyRational(benchmark::State& state) {
  Field field{FieldSpec::rationals()};
  const TensorLieAlgebra& g = torus_over(field);
  const int weight = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ce_homology(g, weight));
}

void BM_HomologyMod5(benchmark::State& state) {
  Field field{FieldSpec::prime(5)};
  const TensorLieAlgebra& g = torus_over(field);
  const int weight = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ce_homology(g, weight));
}

void BM_BoundaryRank(benchmark::State& state) {
  Field field{FieldSpec::rationals()};
  const TensorLieAlgebra& g = torus_over(field);
  ChainComplex complex = build_ce_complex(g, static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (const SparseMap& boundary : complex.boundaries)
      benchmark::DoNotOptimize(rank(boundary, field));
}

}  // namespace

BENCHMARK(BM_BuildComplex)->DenseRange(3, 7);
BENCHMARK(BM_HomologyRational)->DenseRange(3, 7);
BENCHMARK(BM_HomologyMod5)->DenseRange(3, 7);
BENCHMARK(BM_BoundaryRank)->DenseRange(4, 7);

BENCHMARK_MAIN();
