#include <benchmark/benchmark.h>

#include "vortexsphere/catalog.hpp"
#include "vortexsphere/dynamics.hpp"
#include "vortexsphere/orbits.hpp"
#include "vortexsphere/reduction.hpp"

using namespace vortexsphere;

namespace {

UnitVector3 sample_point() { return from_cylindrical({0.41, 0.37}); }

void BM_ReducedField(benchmark::State& state) {
  const SymmetryScheme s =
      make_scheme(GroupKind::Dihedral, static_cast<int>(state.range(0)), FixedChoice::None);
  const UnitVector3 u = sample_point();
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduced_field(u, s));
  }
}
BENCHMARK(BM_ReducedField)->Arg(2)->Arg(4)->Arg(8);

void BM_RegularizedField(benchmark::State& state) {
  const SymmetryScheme s = make_scheme(GroupKind::Tetrahedral, 0, FixedChoice::Cube);
  const UnitVector3 u = sample_point();
  for (auto _ : state) {
    benchmark::DoNotOptimize(regularized_reduced_field(u, s));
  }
}
BENCHMARK(BM_RegularizedField);

void BM_FullVectorField(benchmark::State& state) {
  const SymmetryScheme s = make_scheme(GroupKind::Tetrahedral, 0, FixedChoice::Cube);
  const Configuration v = embed(sample_point(), s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vector_field(v));
  }
}
BENCHMARK(BM_FullVectorField);

void BM_Integrate(benchmark::State& state) {
  const SymmetryScheme s = make_scheme(GroupKind::Dihedral, 3, FixedChoice::Poles);
  const Configuration v0 = embed(sample_point(), s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(v0, 1.0));
  }
}
BENCHMARK(BM_Integrate);

void BM_TracePeriodic(benchmark::State& state) {
  const SymmetryScheme s = make_scheme(GroupKind::Dihedral, 2, FixedChoice::None);
  const UnitVector3 u = sample_point();
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_periodic(u, s));
  }
}
BENCHMARK(BM_TracePeriodic);

void BM_Catalog(benchmark::State& state) {
  const SymmetryScheme s = make_scheme(GroupKind::Tetrahedral, 0, FixedChoice::None);
  for (auto _ : state) {
    benchmark::DoNotOptimize(catalog_for(s));
  }
}
BENCHMARK(BM_Catalog);

void BM_Portrait(benchmark::State& state) {
  const SymmetryScheme s = make_scheme(GroupKind::Dihedral, 2, FixedChoice::None);
  PortraitSpec spec;
  spec.rows = 4;
  spec.cols = 4;
  spec.t_span = 20.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_portrait(s, spec));
  }
}
BENCHMARK(BM_Portrait);

}  // namespace

BENCHMARK_MAIN();
