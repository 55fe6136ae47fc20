#include <benchmark/benchmark.h>

#include "convfix/dual.hpp"
#include "convfix/fixed_point.hpp"

using namespace convfix;

namespace {

ComplexMeasure s4_draw(std::uint64_t seed) {
  DrawProfile profile;
  profile.kind = MeasureProfile::Complex;
  return random_contractive(build_group("symmetric:4"), seed, profile);
}

void BM_Convolve_S4(benchmark::State& state) {
  const ComplexMeasure a = s4_draw(1), b = s4_draw(2);
  for (auto _ : state) benchmark::DoNotOptimize(convolve(a, b));
}
BENCHMARK(BM_Convolve_S4);

void BM_FixedSubspace_S4(benchmark::State& state) {
  const ComplexMeasure m = s4_draw(3);
  for (auto _ : state) benchmark::DoNotOptimize(fixed_subspace(m));
}
BENCHMARK(BM_FixedSubspace_S4);

void BM_CesaroLimit_Z6_Walk(benchmark::State& state) {
  const GroupPtr z6 = build_group("cyclic:6");
  const ComplexMeasure m = haar_on(full_subgroup(z6));
  CesaroOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(cesaro_limit(m, opts));
}
BENCHMARK(BM_CesaroLimit_Z6_Walk);

void BM_LatticePowers(benchmark::State& state) {
  const ComplexMeasure walk = ComplexMeasure::lattice_from_atoms(
      {{-1, cplx{0.5, 0.0}}, {1, cplx{0.5, 0.0}}});
  const long long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(cesaro(walk, n));
}
BENCHMARK(BM_LatticePowers)->Arg(64)->Arg(256);

void BM_DualZSet_D4(benchmark::State& state) {
  const GroupPtr d4 = build_group("dihedral:4");
  std::vector<cplx> values(8, cplx{0.0, 0.0});
  for (int t : {0, 1, 2, 3}) values[t] = 1.0;  // rotation-subgroup indicator
  const DualFunction d = make_dual(d4, values);
  for (auto _ : state) benchmark::DoNotOptimize(z_set(d));
}
BENCHMARK(BM_DualZSet_D4);

void BM_TheoremVerify_Q8(benchmark::State& state) {
  DrawProfile profile;
  profile.kind = MeasureProfile::Complex;
  const ComplexMeasure m = random_contractive(build_group("quaternion8"), 7, profile);
  for (auto _ : state) benchmark::DoNotOptimize(verify_character_factorization(m));
}
BENCHMARK(BM_TheoremVerify_Q8);

}  // namespace

BENCHMARK_MAIN();
