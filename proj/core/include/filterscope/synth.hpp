#pragma once

// Deterministic fixtures with known spectral content. Every random value is a
// pure function of (seed, stream, indices), so generation order and thread
// count never change the output.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "filterscope/dataset.hpp"
#include "filterscope/filter_spectrum.hpp"

namespace filterscope::synth {

/// SplitMix64-style hash of a seed and a list of counters.
std::uint64_t counter_hash(std::uint64_t seed, std::initializer_list<std::uint64_t> counters);
/// Uniform in [0, 1) with 53 random bits.
double uniform01(std::uint64_t bits);
/// Standard normal value at position `index` of the stream (seed, stream, a, b).
/// Pairs (2k, 2k+1) come from one Marsaglia polar draw; rejected attempts
/// advance an attempt counter.
double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b, std::uint64_t index);

struct SynthChannel {
  std::string name;
  Modality modality = Modality::EEG;
  double injected_frequency_hz = 10.0;
  double injected_amplitude = 3.0;
};

struct SynthConfig {
  std::uint64_t seed = 0;
  double sampling_rate_hz = 100.0;
  std::size_t epoch_length_samples = 3000;
  std::size_t epochs_per_class = 20;
  double noise_std = 1.0;
  double injected_frequency_hz = 10.0;
  double injected_amplitude = 3.0;
  /// Empty: one EEG channel "C1" using the injection settings above.
  std::vector<SynthChannel> channels;

  void validate() const;
  std::vector<SynthChannel> resolved_channels() const;
};

/// Two classes "A" and "B", labels alternating A, B, A, ... Class A is white
/// noise; class B adds a sinusoid with a per-epoch random phase.
EpochDataset gen_two_class_dataset(const SynthConfig& config, std::string label = "two-class");

struct SynthFilterSpec {
  ScaleSpec scale;
  /// Filter i is a cosine at target_freqs_hz[i % size]; every target must
  /// lie on this scale's DFT grid.
  std::vector<double> target_freqs_hz;
};

/// The first filter for each target is an exact unit cosine; later filters
/// get a random amplitude in [0.5, 1.5) and phase. `tap_noise_std` adds
/// white noise to every tap.
FilterBank gen_sinusoid_filterbank(std::uint64_t seed, double sampling_rate_hz,
                                   std::span<const SynthFilterSpec> scales, std::size_t n_taps,
                                   std::size_t n_filters, double tap_noise_std = 0.0,
                                   std::string model_label = "synthetic");

/// 1 scale, 8 filters x 50 taps at 100 Hz, peaks across 2-12 Hz.
FilterBank eegnet_like_bank(std::uint64_t seed);
/// 4 scales (decimation 1, 2, 4, 8), 8 filters x 15 taps at 100 Hz.
FilterBank msacnn_like_bank(std::uint64_t seed);
/// Four channels (two EEG, EOG, EMG) with different injected frequencies.
SynthConfig two_class_fixture_config(std::uint64_t seed);

}  // namespace filterscope::synth
