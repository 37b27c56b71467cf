#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "dmfsense/dsp.hpp"
#include "dmfsense/rng.hpp"
#include "dmfsense/scan.hpp"

namespace {

dmfsense::LiquidLibrary bench_liquids() {
  dmfsense::LiquidLibrary liquids;
  liquids.add(dmfsense::Liquid::constant("water", 80.0));
  liquids.add(dmfsense::Liquid::constant("silicone_oil", 2.0));
  return liquids;
}

void BM_fft(benchmark::State& state) {
  dmfsense::SplitMix64 rng(1);
  std::vector<std::complex<double>> input(static_cast<std::size_t>(state.range(0)));
  for (auto& x : input) x = {rng.uniform01(), 0.0};
  for (auto _ : state) {
    std::vector<std::complex<double>> data = input;
    dmfsense::fft_in_place(data);
    benchmark::DoNotOptimize(data);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_fft)->RangeMultiplier(4)->Range(256, 4096)->Complexity();

void BM_measure_channel(benchmark::State& state) {
  const dmfsense::StimulusConfig stimulus{};
  const dmfsense::FrontEndConfig frontend{};
  const dmfsense::AdcConfig adc{};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dmfsense::measure_channel(1.24e-12, stimulus, frontend, adc, seed++));
  }
}
BENCHMARK(BM_measure_channel);

void BM_scan_169(benchmark::State& state) {
  dmfsense::ScanContext context{
      dmfsense::HexArray(8),
      dmfsense::DeviceModel(dmfsense::DeviceGeometry{}, bench_liquids()),
      dmfsense::StimulusConfig{},
      dmfsense::FrontEndConfig{},
      dmfsense::AdcConfig{},
      dmfsense::Thresholds{24000.0, 104000.0, 11718.75},
      1};
  const std::vector<dmfsense::ChannelOccupancy> occupancies(
      169, dmfsense::ChannelOccupancy::make_medium("silicone_oil"));
  int scan_index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dmfsense::scan_all(context, occupancies,
                                                dmfsense::FaultSpec{},
                                                scan_index++));
  }
}
BENCHMARK(BM_scan_169);

}  // namespace

BENCHMARK_MAIN();
