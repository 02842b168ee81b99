#include <benchmark/benchmark.h>

#include <random>

#include "filterscope/analysis.hpp"
#include "filterscope/class_variation.hpp"
#include "filterscope/filter_spectrum.hpp"
#include "filterscope/spectral.hpp"
#include "filterscope/synth.hpp"

using namespace filterscope;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = synth::gaussian(seed, 0, 0, 0, i);
  return x;
}

void BM_DftMagnitudes(benchmark::State& state) {
  const auto taps = noise(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(dft_magnitudes(taps, 100.0));
}
BENCHMARK(BM_DftMagnitudes)->Arg(15)->Arg(50)->Arg(64);

void BM_WelchEpoch(benchmark::State& state) {
  const Signal signal(noise(3000, 2), 100.0);
  const auto seg = static_cast<std::size_t>(state.range(0));
  const auto window = hann_window(seg);
  for (auto _ : state) benchmark::DoNotOptimize(welch_psd(signal, seg, 0.5, window));
}
// 256 takes the radix-2 path, 200 the direct one
BENCHMARK(BM_WelchEpoch)->Arg(256)->Arg(200);

void BM_RetrieveFilterSpectrum(benchmark::State& state) {
  const auto bank = state.range(0) == 1 ? synth::eegnet_like_bank(1) : synth::msacnn_like_bank(1);
  for (auto _ : state) benchmark::DoNotOptimize(retrieve_filter_spectrum(bank));
}
BENCHMARK(BM_RetrieveFilterSpectrum)->Arg(1)->Arg(4);

void BM_UnificationMatrix(benchmark::State& state) {
  std::vector<ScaleSpec> scales;
  std::vector<WeightMatrix> weights;
  for (int s = 0; s < 5; ++s) {
    scales.push_back({"S" + std::to_string(s), 1 << s});
    weights.emplace_back(1, 32, std::vector<double>(32, 1.0));
  }
  const FilterBank bank(100.0, scales, weights);
  for (auto _ : state) {
    const auto sc = scale_frequencies(bank);
    benchmark::DoNotOptimize(build_unification_matrix(sc, unique_frequencies(sc, 100.0)));
  }
}
BENCHMARK(BM_UnificationMatrix);

void BM_ChannelBcv(benchmark::State& state) {
  const auto ds = synth::gen_two_class_dataset(synth::two_class_fixture_config(1));
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(channel_bcv(ds, {}, StdKind::Population, threads));
}
BENCHMARK(BM_ChannelBcv)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ChannelCorrelations(benchmark::State& state) {
  const auto spectrum = retrieve_filter_spectrum(synth::msacnn_like_bank(1));
  const auto bcvs = channel_bcv(synth::gen_two_class_dataset(synth::two_class_fixture_config(1)));
  for (auto _ : state) benchmark::DoNotOptimize(channel_correlations(spectrum, bcvs));
}
BENCHMARK(BM_ChannelCorrelations);

}  // namespace
BENCHMARK_MAIN();
