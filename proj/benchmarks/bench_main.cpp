#include <benchmark/benchmark.h>

#include "cvoam/channel.hpp"
#include "cvoam/criteria.hpp"
#include "cvoam/modes.hpp"
#include "cvoam/tomography.hpp"

using namespace cvoam;

namespace {

const SqueezingSpec kSource{0.47, 4.11};

void BM_PptNu(benchmark::State& state) {
  const CovarianceMatrix cm = apply_channel(make_tmss(kSource), {0.5, 0.15});
  for (auto _ : state) benchmark::DoNotOptimize(ppt_nu(cm));
}
BENCHMARK(BM_PptNu);

void BM_PptNuSpectral(benchmark::State& state) {
  const CovarianceMatrix cm = apply_channel(make_tmss(kSource), {0.5, 0.15});
  for (auto _ : state) benchmark::DoNotOptimize(ppt_nu_spectral(cm));
}
BENCHMARK(BM_PptNuSpectral);

void BM_Classify(benchmark::State& state) {
  const CovarianceMatrix cm = apply_channel(make_tmss(kSource), {0.5, 0.15});
  for (auto _ : state) benchmark::DoNotOptimize(classify(cm));
}
BENCHMARK(BM_Classify);

void BM_EntanglementDeath(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(entanglement_death_eta(kSource, 1.0));
}
BENCHMARK(BM_EntanglementDeath);

void BM_SimulateMeasurements(benchmark::State& state) {
  const CovarianceMatrix cm = make_tmss(kSource);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_measurements(cm, state.range(0), ++seed));
  state.SetItemsProcessed(state.iterations() * 6 * state.range(0));
}
BENCHMARK(BM_SimulateMeasurements)->Arg(10000)->Arg(100000)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_TiltedLens(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FieldGrid field = lg_field({2, 1.0}, {n, n, 6.0});
  for (auto _ : state) benchmark::DoNotOptimize(tilted_lens_pattern(field, 2.0));
}
BENCHMARK(BM_TiltedLens)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
