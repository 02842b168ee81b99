#include "filterscope/synth.hpp"

#include <cmath>
#include <numbers>

#include "filterscope/error.hpp"
#include "filterscope/spectral.hpp"

namespace filterscope::synth {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum Stream : std::uint64_t { kNoise = 1, kPhase = 2, kFilterAmplitude = 3, kFilterPhase = 4, kTapNoise = 5 };

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::initializer_list<std::uint64_t> counters) {
  std::uint64_t h = mix(seed);
  for (std::uint64_t c : counters) h = mix(h ^ mix(c));
  return h;
}

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t a, std::uint64_t b, std::uint64_t index) {
  const std::uint64_t pair = index / 2;
  for (std::uint64_t attempt = 0;; ++attempt) {
    const double u = 2.0 * uniform01(counter_hash(seed, {stream, a, b, pair, attempt, 0})) - 1.0;
    const double v = 2.0 * uniform01(counter_hash(seed, {stream, a, b, pair, attempt, 1})) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double factor = std::sqrt(-2.0 * std::log(s) / s);
      return (index % 2 == 0 ? u : v) * factor;
    }
  }
}

void SynthConfig::validate() const {
  const auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (!(sampling_rate_hz > 0.0)) fail("sampling_rate_hz must be positive");
  if (epoch_length_samples < 2) fail("epoch_length_samples must be at least 2");
  if (epochs_per_class < 2) fail("epochs_per_class must be at least 2");
  if (!(noise_std > 0.0)) fail("noise_std must be positive");
  for (const auto& ch : resolved_channels()) {
    if (!(ch.injected_frequency_hz > 0.0 && ch.injected_frequency_hz < sampling_rate_hz / 2.0)) {
      fail("channel '" + ch.name + "': injected frequency must lie in (0, Nyquist)");
    }
    if (!(ch.injected_amplitude >= 0.0) || !std::isfinite(ch.injected_amplitude)) {
      fail("channel '" + ch.name + "': injected amplitude must be finite and >= 0");
    }
  }
}

std::vector<SynthChannel> SynthConfig::resolved_channels() const {
  if (!channels.empty()) return channels;
  return {SynthChannel{"C1", Modality::EEG, injected_frequency_hz, injected_amplitude}};
}

EpochDataset gen_two_class_dataset(const SynthConfig& config, std::string label) {
  config.validate();
  const auto channels = config.resolved_channels();
  const std::size_t n_epochs = 2 * config.epochs_per_class;
  const std::size_t n = config.epoch_length_samples;
  std::vector<float> data(n_epochs * channels.size() * n);
  std::vector<int> labels(n_epochs);
  std::vector<ChannelInfo> infos;
  for (const auto& ch : channels) infos.push_back({ch.name, ch.modality});

  for (std::size_t e = 0; e < n_epochs; ++e) {
    labels[e] = static_cast<int>(e % 2);
    for (std::size_t c = 0; c < channels.size(); ++c) {
      float* out = data.data() + (e * channels.size() + c) * n;
      const double phase = kTwoPi * uniform01(counter_hash(config.seed, {kPhase, e, c}));
      const double omega = kTwoPi * channels[c].injected_frequency_hz / config.sampling_rate_hz;
      for (std::size_t i = 0; i < n; ++i) {
        double x = config.noise_std * gaussian(config.seed, kNoise, e, c, i);
        if (labels[e] == 1) x += channels[c].injected_amplitude * std::sin(omega * static_cast<double>(i) + phase);
        out[i] = static_cast<float>(x);
      }
    }
  }
  return EpochDataset(config.sampling_rate_hz, n, std::move(infos), {"A", "B"}, std::move(data), std::move(labels),
                      std::move(label));
}

FilterBank gen_sinusoid_filterbank(std::uint64_t seed, double sampling_rate_hz,
                                   std::span<const SynthFilterSpec> scales, std::size_t n_taps,
                                   std::size_t n_filters, double tap_noise_std, std::string model_label) {
  if (n_taps < 2) throw Error(ErrorCode::InvalidFilterLength, "filters need at least 2 taps");
  if (n_filters < 1) throw Error(ErrorCode::InvalidArgument, "need at least one filter per scale");
  if (!(sampling_rate_hz > 0.0)) throw Error(ErrorCode::InvalidArgument, "sampling rate must be positive");
  const std::size_t bins = positive_bin_count(n_taps);

  std::vector<ScaleSpec> specs;
  std::vector<WeightMatrix> weights;
  for (std::size_t s = 0; s < scales.size(); ++s) {
    const auto& scale = scales[s];
    if (scale.target_freqs_hz.empty()) throw Error(ErrorCode::InvalidTarget, "scale '" + scale.scale.name + "' has no targets");
    if (scale.scale.downsample_factor < 1) throw Error(ErrorCode::InvalidArgument, "downsample factor must be >= 1");
    const double bin_hz = sampling_rate_hz / (static_cast<double>(scale.scale.downsample_factor) * static_cast<double>(n_taps));
    std::vector<std::size_t> target_bins;
    for (double f : scale.target_freqs_hz) {
      const double j = f / bin_hz;
      const double rounded = std::round(j);
      if (!std::isfinite(j) || std::abs(j - rounded) > 1e-9 * std::max(1.0, rounded) || rounded < 0.0 ||
          rounded >= static_cast<double>(bins)) {
        throw Error(ErrorCode::InvalidTarget, "target " + std::to_string(f) + " Hz is not on the DFT grid of scale '" +
                                                  scale.scale.name + "' (spacing " + std::to_string(bin_hz) + " Hz)");
      }
      target_bins.push_back(static_cast<std::size_t>(rounded));
    }

    std::vector<double> values(n_filters * n_taps);
    for (std::size_t f = 0; f < n_filters; ++f) {
      const std::size_t j = target_bins[f % target_bins.size()];
      double amplitude = 1.0;
      double phase = 0.0;
      if (f >= target_bins.size()) {
        amplitude = 0.5 + uniform01(counter_hash(seed, {kFilterAmplitude, s, f}));
        phase = j == 0 ? 0.0 : kTwoPi * uniform01(counter_hash(seed, {kFilterPhase, s, f}));
      }
      for (std::size_t n = 0; n < n_taps; ++n) {
        const double angle = kTwoPi * static_cast<double>((j * n) % n_taps) / static_cast<double>(n_taps);
        double tap = amplitude * std::cos(angle + phase);
        if (tap_noise_std > 0.0) tap += tap_noise_std * gaussian(seed, kTapNoise, s, f, n);
        values[f * n_taps + n] = tap;
      }
    }
    specs.push_back(scale.scale);
    weights.emplace_back(n_filters, n_taps, std::move(values));
  }
  return FilterBank(sampling_rate_hz, std::move(specs), std::move(weights), std::move(model_label));
}

FilterBank eegnet_like_bank(std::uint64_t seed) {
  const SynthFilterSpec spec{{"I", 1}, {2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 10.0, 6.0}};
  return gen_sinusoid_filterbank(seed, 100.0, std::span(&spec, 1), 50, 8, 0.1, "eegnet-like");
}

FilterBank msacnn_like_bank(std::uint64_t seed) {
  constexpr double rate = 100.0;
  constexpr std::size_t taps = 15;
  const auto on_grid = [&](int j, int d) { return static_cast<double>(j) * rate / static_cast<double>(d * static_cast<int>(taps)); };
  const std::vector<SynthFilterSpec> specs = {
      {{"I", 1}, {on_grid(1, 1), on_grid(2, 1)}},
      {{"II", 2}, {on_grid(1, 2), on_grid(2, 2), on_grid(3, 2)}},
      {{"III", 4}, {on_grid(2, 4), on_grid(4, 4)}},
      {{"IV", 8}, {on_grid(1, 8), on_grid(3, 8)}},
  };
  return gen_sinusoid_filterbank(seed, rate, specs, taps, 8, 0.1, "msacnn-like");
}

SynthConfig two_class_fixture_config(std::uint64_t seed) {
  SynthConfig config;
  config.seed = seed;
  config.channels = {
      {"Fpz-Cz", Modality::EEG, 10.0, 3.0},
      {"Pz-Oz", Modality::EEG, 6.0, 2.0},
      {"EOG", Modality::EOG, 2.0, 1.5},
      {"EMG", Modality::EMG, 35.0, 3.0},
  };
  return config;
}

}  // namespace filterscope::synth
