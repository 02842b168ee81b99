#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "filterscope/class_variation.hpp"
#include "filterscope/error.hpp"
#include "filterscope/synth.hpp"

using namespace filterscope;
using namespace filterscope::synth;

namespace {

std::size_t argmax(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

SynthConfig small_config(std::uint64_t seed) {
  SynthConfig cfg;
  cfg.seed = seed;
  cfg.epoch_length_samples = 512;
  cfg.epochs_per_class = 4;
  return cfg;
}

}  // namespace

TEST_CASE("counter hash: deterministic and sensitive to every counter") {
  CHECK(counter_hash(1, {2, 3}) == counter_hash(1, {2, 3}));
  CHECK(counter_hash(1, {2, 3}) != counter_hash(2, {2, 3}));
  CHECK(counter_hash(1, {2, 3}) != counter_hash(1, {3, 2}));
  CHECK(counter_hash(1, {2, 3}) != counter_hash(1, {2, 3, 0}));
  for (std::uint64_t b : {0ull, 1ull, ~0ull}) {
    const double u = uniform01(b);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("gaussian: sample moments") {
  const std::size_t n = 200000;
  double sum = 0.0, sq = 0.0, quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double g = gaussian(5, 0, 1, 2, i);
    sum += g;
    sq += g * g;
    quad += g * g * g * g;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
  CHECK(std::abs(quad / n - 3.0) < 0.1);
  CHECK(gaussian(5, 0, 1, 2, 17) == gaussian(5, 0, 1, 2, 17));
}

TEST_CASE("gen_sinusoid_filterbank: 20 Hz on a 15-tap grid is cos(2 pi 3 n / 15)") {
  const std::vector<SynthFilterSpec> specs{{{"I", 1}, {20.0}}};
  const auto bank = gen_sinusoid_filterbank(1, 100.0, specs, 15, 1);
  const auto taps = bank.weights(0).filter(0);
  for (std::size_t n = 0; n < 15; ++n) {
    CHECK(std::abs(taps[n] - std::cos(2.0 * std::numbers::pi * 3.0 * static_cast<double>(n) / 15.0)) < 1e-15);
  }
}

TEST_CASE("gen_sinusoid_filterbank: a 0 Hz target is a constant filter") {
  const std::vector<SynthFilterSpec> specs{{{"I", 1}, {0.0}}};
  const auto bank = gen_sinusoid_filterbank(1, 100.0, specs, 10, 1);
  for (double t : bank.weights(0).filter(0)) CHECK(t == 1.0);
}

TEST_CASE("gen_sinusoid_filterbank: off-grid targets are rejected") {
  const std::vector<SynthFilterSpec> specs{{{"I", 1}, {21.0}}};
  try {
    gen_sinusoid_filterbank(1, 100.0, specs, 15, 1);
    FAIL("expected invalid-target");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidTarget);
  }
  // on grid for d = 2 (100 / 30 Hz spacing) but not for d = 1
  const std::vector<SynthFilterSpec> ok{{{"II", 2}, {100.0 / 30.0}}};
  CHECK_NOTHROW(gen_sinusoid_filterbank(1, 100.0, ok, 15, 1));
  const std::vector<SynthFilterSpec> bad{{{"I", 1}, {100.0 / 30.0}}};
  CHECK_THROWS_AS(gen_sinusoid_filterbank(1, 100.0, bad, 15, 1), Error);
}

TEST_CASE("gen_sinusoid_filterbank: each scale peaks at its own target") {
  // targets chosen on bins that only their scale produces
  const std::vector<SynthFilterSpec> specs{
      {{"I", 1}, {40.0}},
      {{"II", 2}, {100.0 / 6.0}},
      {{"III", 4}, {25.0 / 3.0}},
      {{"IV", 8}, {35.0 / 6.0}},
  };
  const auto bank = gen_sinusoid_filterbank(2, 100.0, specs, 15, 4);
  const auto spectrum = retrieve_filter_spectrum(bank);
  const auto hz = spectrum.grid.hz();
  for (std::size_t s = 0; s < 4; ++s) {
    const double target = specs[s].target_freqs_hz[0];
    // the largest amplitude among bins fed only by scale s is the target
    double best = -1.0, best_hz = -1.0;
    for (std::size_t i = 0; i < hz.size(); ++i) {
      if (spectrum.contributing_scales[i] != std::vector<int>{static_cast<int>(s)}) continue;
      if (spectrum.amplitudes[i] > best) {
        best = spectrum.amplitudes[i];
        best_hz = hz[i];
      }
    }
    CHECK(std::abs(best_hz - target) < 1e-9);
  }
}

TEST_CASE("fixture banks have the documented shapes") {
  const auto eeg = eegnet_like_bank(0);
  CHECK(eeg.scale_count() == 1);
  CHECK(eeg.weights(0).n_filters() == 8);
  CHECK(eeg.n_taps() == 50);
  const auto msa = msacnn_like_bank(0);
  CHECK(msa.scale_count() == 4);
  CHECK(msa.n_taps() == 15);
  for (std::size_t s = 0; s < 4; ++s) {
    CHECK(msa.weights(s).n_filters() == 8);
    CHECK(msa.scales()[s].downsample_factor == (1 << s));
  }
  CHECK(eegnet_like_bank(3).weights(0).values()[7] == eegnet_like_bank(3).weights(0).values()[7]);
  CHECK(eegnet_like_bank(3).weights(0).values()[7] != eegnet_like_bank(4).weights(0).values()[7]);
}

TEST_CASE("gen_two_class_dataset: layout and determinism") {
  const auto cfg = small_config(7);
  const auto a = gen_two_class_dataset(cfg);
  const auto b = gen_two_class_dataset(cfg);
  CHECK(a.epoch_count() == 8);
  CHECK(a.classes() == std::vector<std::string>{"A", "B"});
  CHECK(a.labels() == std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1});
  REQUIRE(a.data().size() == b.data().size());
  CHECK(std::memcmp(a.data().data(), b.data().data(), a.data().size_bytes()) == 0);
  auto other = cfg;
  other.seed = 8;
  CHECK(std::memcmp(a.data().data(), gen_two_class_dataset(other).data().data(), a.data().size_bytes()) != 0);
}

TEST_CASE("gen_two_class_dataset: a sample depends only on seed and its indices") {
  auto cfg = small_config(3);
  cfg.channels = {{"X", Modality::EEG, 10.0, 3.0}, {"Y", Modality::EMG, 20.0, 1.0}};
  const auto full = gen_two_class_dataset(cfg);
  auto fewer = cfg;
  fewer.epochs_per_class = 2;
  fewer.epoch_length_samples = 512;
  const auto part = gen_two_class_dataset(fewer);
  for (std::size_t e = 0; e < part.epoch_count(); ++e) {
    for (std::size_t c = 0; c < 2; ++c) {
      const auto x = full.epoch(e, c);
      const auto y = part.epoch(e, c);
      CHECK(std::equal(x.begin(), x.end(), y.begin()));
    }
  }
}

TEST_CASE("gen_two_class_dataset: class A is white noise of the configured std") {
  auto cfg = small_config(11);
  cfg.noise_std = 2.5;
  cfg.epochs_per_class = 10;
  cfg.epoch_length_samples = 2000;
  const auto ds = gen_two_class_dataset(cfg);
  double sum = 0.0, sq = 0.0;
  std::size_t n = 0;
  for (auto e : ds.epochs_of_class(0)) {
    for (float v : ds.epoch(e, 0)) {
      sum += v;
      sq += static_cast<double>(v) * v;
      ++n;
    }
  }
  const double mean = sum / static_cast<double>(n);
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(std::sqrt(sq / static_cast<double>(n) - mean * mean) - 2.5) < 0.05);
}

TEST_CASE("gen_two_class_dataset: amplitude zero gives no systematic peak") {
  int at_injected = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto cfg = small_config(seed);
    cfg.injected_amplitude = 0.0;
    cfg.epochs_per_class = 10;
    cfg.epoch_length_samples = 1000;
    const auto bcv = channel_bcv(gen_two_class_dataset(cfg), {200, 0.5});
    at_injected += bcv[0].frequencies_hz[argmax(bcv[0].ratio)] == 10.0;
  }
  CHECK(at_injected <= 2);
}

TEST_CASE("gen_two_class_dataset: large amplitude peaks at the injected bin") {
  for (double f : {5.0, 12.5, 31.0}) {
    auto cfg = small_config(4);
    cfg.injected_frequency_hz = f;
    cfg.injected_amplitude = 20.0;
    cfg.epochs_per_class = 20;
    cfg.epoch_length_samples = 3000;
    const auto bcv = channel_bcv(gen_two_class_dataset(cfg), {200, 0.5});
    CHECK(bcv[0].frequencies_hz[argmax(bcv[0].ratio)] == f);
  }
}

TEST_CASE("generate-then-validate over random configurations") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    SynthConfig cfg;
    cfg.seed = rng();
    cfg.sampling_rate_hz = 20.0 + 480.0 * u(rng);
    cfg.epoch_length_samples = 16 + rng() % 300;
    cfg.epochs_per_class = 2 + rng() % 5;
    cfg.noise_std = 0.01 + 10.0 * u(rng);
    cfg.injected_frequency_hz = cfg.sampling_rate_hz / 2.0 * (0.01 + 0.98 * u(rng));
    cfg.injected_amplitude = 10.0 * u(rng);
    CHECK_NOTHROW(cfg.validate());
    const auto ds = gen_two_class_dataset(cfg);
    CHECK(ds.epoch_count() == 2 * cfg.epochs_per_class);
    CHECK(ds.data().size() == ds.epoch_count() * cfg.epoch_length_samples);
    CHECK(std::all_of(ds.data().begin(), ds.data().end(), [](float v) { return std::isfinite(v); }));
    // and it is valid input for the downstream pipeline
    CHECK_NOTHROW(channel_bcv(ds, {std::min<std::size_t>(16, cfg.epoch_length_samples), 0.5}));

    // a random filter bank on a random grid
    const std::size_t taps = 2 + rng() % 40;
    const int d = 1 + static_cast<int>(rng() % 8);
    const std::size_t bin = rng() % ((taps + 1) / 2);
    const double target = static_cast<double>(bin) * cfg.sampling_rate_hz / (d * static_cast<double>(taps));
    const std::vector<SynthFilterSpec> specs{{{"S", d}, {target}}};
    const auto bank = gen_sinusoid_filterbank(cfg.seed, cfg.sampling_rate_hz, specs, taps, 1 + rng() % 5, 0.0);
    const auto spec = retrieve_filter_spectrum(bank);
    CHECK(argmax(spec.amplitudes) == bin);
  }
}

TEST_CASE("SynthConfig: invalid settings are rejected") {
  auto bad = [](auto fn) {
    SynthConfig cfg;
    fn(cfg);
    CHECK_THROWS_AS(cfg.validate(), Error);
    CHECK_THROWS_AS(gen_two_class_dataset(cfg), Error);
  };
  bad([](auto& c) { c.noise_std = 0.0; });
  bad([](auto& c) { c.injected_frequency_hz = 50.0; });
  bad([](auto& c) { c.injected_amplitude = -1.0; });
  bad([](auto& c) { c.epochs_per_class = 1; });
  bad([](auto& c) { c.sampling_rate_hz = 0.0; });
}
