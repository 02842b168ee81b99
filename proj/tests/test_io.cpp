#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>

#include <json.hpp>

#include "filterscope/error.hpp"
#include "filterscope/io.hpp"
#include "filterscope/synth.hpp"

using namespace filterscope;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("filterscope_io_" + tag + "_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InternalConsistency;
}

std::string message_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

const char* kMinimal = R"({
  "format_version": 1,
  "model_label": "tiny",
  "sampling_rate_hz": 100,
  "scales": [{"name": "I", "downsample_factor": 1, "n_filters": 1, "n_taps": 4,
              "weights": [[1, 0, -1, 0.5]]}]
})";

// 2 epochs x 1 channel x 4 samples
fs::path write_small_dataset(const fs::path& dir, std::size_t payload_bytes, std::vector<int> labels = {0, 1}) {
  std::string payload(payload_bytes, '\0');
  for (std::size_t i = 0; i + 4 <= payload_bytes; i += 4) {
    const float v = static_cast<float>(i) * 0.25f;
    std::memcpy(payload.data() + i, &v, 4);
  }
  io::write_file(dir / "small.f32", payload);
  nlohmann::json m;
  m["format_version"] = 1;
  m["name"] = "small";
  m["sampling_rate_hz"] = 100.0;
  m["epoch_length_samples"] = 4;
  m["epoch_count"] = 2;
  m["channels"] = nlohmann::json::array({{{"name", "C1"}, {"modality", "EEG"}}});
  m["classes"] = {"A", "B"};
  m["payload"] = {{"path", "small.f32"}, {"fnv1a64", io::fnv1a64_hex(payload)}};
  m["labels"] = labels;
  io::write_file(dir / "small.manifest.json", m.dump(2));
  return dir / "small.manifest.json";
}

}  // namespace

TEST_CASE("fnv1a64: reference vectors") {
  CHECK(io::fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(io::fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(io::fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("load_weights: minimal valid file") {
  const auto bank = io::parse_weights(kMinimal);
  CHECK(bank.scale_count() == 1);
  CHECK(bank.weights(0).n_filters() == 1);
  CHECK(bank.n_taps() == 4);
  CHECK(bank.model_label() == "tiny");
  CHECK(bank.source_digest() == io::fnv1a64_hex(kMinimal));
  const std::vector<double> expected{1, 0, -1, 0.5};
  CHECK(std::equal(expected.begin(), expected.end(), bank.weights(0).filter(0).begin()));
}

TEST_CASE("load_weights: short row names the scale and filter") {
  auto j = nlohmann::json::parse(kMinimal);
  j["scales"][0]["n_taps"] = 15;
  j["scales"][0]["n_filters"] = 2;
  j["scales"][0]["name"] = "III";
  std::vector<double> row15(15, 0.5), row14(14, 0.5);
  j["scales"][0]["weights"] = {row15, row14};
  const auto text = j.dump();
  CHECK(code_of([&] { io::parse_weights(text); }) == ErrorCode::DimensionMismatch);
  const auto msg = message_of([&] { io::parse_weights(text); });
  CHECK(msg.find("III") != std::string::npos);
  CHECK(msg.find("filter 1") != std::string::npos);
}

TEST_CASE("load_weights: distinct errors per failure") {
  auto mutate = [](auto fn) {
    auto j = nlohmann::json::parse(kMinimal);
    fn(j);
    return j.dump();
  };
  CHECK(code_of([&] { io::parse_weights(mutate([](auto& j) { j["format_version"] = 2; })); }) == ErrorCode::UnsupportedVersion);
  CHECK(code_of([&] { io::parse_weights(mutate([](auto& j) { j.erase("scales"); })); }) == ErrorCode::Malformed);
  CHECK(code_of([&] { io::parse_weights(mutate([](auto& j) { j["scales"][0]["weights"][0][1] = "x"; })); }) == ErrorCode::Malformed);
  CHECK(code_of([&] { io::parse_weights(mutate([](auto& j) { j["scales"][0]["n_filters"] = 2; })); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([&] { io::parse_weights(mutate([](auto& j) { j["sampling_rate_hz"] = -1; })); }) == ErrorCode::ValueOutOfRange);
  CHECK(code_of([&] { io::parse_weights("{ not json"); }) == ErrorCode::Malformed);
  // NaN and overflowing literals are not representable in strict JSON
  std::string nan_text = kMinimal;
  nan_text.replace(nan_text.find("0.5"), 3, "NaN");
  CHECK(code_of([&] { io::parse_weights(nan_text); }) == ErrorCode::Malformed);
  std::string big = kMinimal;
  big.replace(big.find("0.5"), 3, "1e999");
  const auto big_code = code_of([&] { io::parse_weights(big); });
  CHECK((big_code == ErrorCode::NonFinite || big_code == ErrorCode::Malformed));
}

TEST_CASE("weights: canonical round trip is byte-identical and bit-exact") {
  for (auto bank : {synth::eegnet_like_bank(4), synth::msacnn_like_bank(4)}) {
    const auto text = io::serialize_weights(bank);
    const auto loaded = io::parse_weights(text);
    CHECK(io::serialize_weights(loaded) == text);
    for (std::size_t s = 0; s < bank.scale_count(); ++s) {
      const auto a = bank.weights(s).values();
      const auto b = loaded.weights(s).values();
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::bit_cast<std::uint64_t>(a[i]) == std::bit_cast<std::uint64_t>(b[i]));
      CHECK(loaded.scales()[s].name == bank.scales()[s].name);
      CHECK(loaded.scales()[s].downsample_factor == bank.scales()[s].downsample_factor);
    }
  }
  TempDir dir("w");
  const auto bank = synth::msacnn_like_bank(1);
  io::save_weights(bank, dir.path / "m.weights.json");
  CHECK(io::serialize_weights(io::load_weights(dir.path / "m.weights.json")) == io::serialize_weights(bank));
  CHECK(code_of([&] { io::load_weights(dir.path / "missing.json"); }) == ErrorCode::Io);
}

TEST_CASE("load_dataset: payload size arithmetic") {
  TempDir dir("size");
  const auto ds = io::load_dataset(write_small_dataset(dir.path, 32));
  CHECK(ds.epoch_count() == 2);
  CHECK(ds.epoch(1, 0)[0] == 4.0f);
  CHECK(code_of([&] { io::load_dataset(write_small_dataset(dir.path, 31)); }) == ErrorCode::SizeMismatch);
  CHECK(code_of([&] { io::load_dataset(write_small_dataset(dir.path, 36)); }) == ErrorCode::SizeMismatch);
}

TEST_CASE("load_dataset: label equal to the class count names the epoch") {
  TempDir dir("label");
  const auto manifest = write_small_dataset(dir.path, 32, {0, 2});
  CHECK(code_of([&] { io::load_dataset(manifest); }) == ErrorCode::LabelOutOfRange);
  CHECK(message_of([&] { io::load_dataset(manifest); }).find("epoch 1") != std::string::npos);
}

TEST_CASE("load_dataset: digest and payload mismatch") {
  TempDir dir("digest");
  const auto manifest = write_small_dataset(dir.path, 32);
  auto payload = io::read_file(dir.path / "small.f32");
  payload[5] ^= 0x01;
  io::write_file(dir.path / "small.f32", payload);
  CHECK(code_of([&] { io::load_dataset(manifest); }) == ErrorCode::DigestMismatch);
  fs::remove(dir.path / "small.f32");
  CHECK(code_of([&] { io::load_dataset(manifest); }) == ErrorCode::Io);
}

TEST_CASE("load_dataset: NaN in the payload is rejected") {
  TempDir dir("nan");
  write_small_dataset(dir.path, 32);
  auto payload = io::read_file(dir.path / "small.f32");
  const float nan = std::nanf("");
  std::memcpy(payload.data() + 8, &nan, 4);
  io::write_file(dir.path / "small.f32", payload);
  auto m = nlohmann::json::parse(io::read_file(dir.path / "small.manifest.json"));
  m["payload"]["fnv1a64"] = io::fnv1a64_hex(payload);
  io::write_file(dir.path / "small.manifest.json", m.dump());
  CHECK(code_of([&] { io::load_dataset(dir.path / "small.manifest.json"); }) == ErrorCode::NonFinite);
}

TEST_CASE("dataset: synth round trip is byte-identical and bit-exact") {
  TempDir dir("rt");
  synth::SynthConfig cfg = synth::two_class_fixture_config(9);
  cfg.epoch_length_samples = 500;
  cfg.epochs_per_class = 3;
  const auto ds = synth::gen_two_class_dataset(cfg);
  const auto manifest = io::save_dataset(ds, dir.path, "fx");
  CHECK(manifest.filename() == "fx.manifest.json");
  CHECK(fs::file_size(dir.path / "fx.f32") == ds.epoch_count() * ds.channel_count() * 500 * 4);
  const auto loaded = io::load_dataset(manifest);
  CHECK(std::memcmp(loaded.data().data(), ds.data().data(), ds.data().size_bytes()) == 0);
  CHECK(loaded.labels() == ds.labels());
  CHECK(loaded.classes() == ds.classes());
  CHECK(loaded.channels()[2].modality == Modality::EOG);
  TempDir again("rt2");
  io::save_dataset(loaded, again.path, "fx");
  CHECK(io::read_file(again.path / "fx.manifest.json") == io::read_file(dir.path / "fx.manifest.json"));
  CHECK(io::read_file(again.path / "fx.f32") == io::read_file(dir.path / "fx.f32"));
}

TEST_CASE("accuracies: examples") {
  const auto acc = io::parse_accuracies("channel,accuracy\nF3-A2, 0.78\nC3-A2,0.81\nEOG,0.5\n");
  CHECK(acc.size() == 3);
  CHECK(acc.at("F3-A2") == 0.78);
  CHECK(code_of([] { io::parse_accuracies("channel,accuracy\nF3-A2,1.2\n"); }) == ErrorCode::ValueOutOfRange);
  CHECK(code_of([] { io::parse_accuracies("channel,accuracy\nEOG,0.5\nEOG,0.6\n"); }) == ErrorCode::DuplicateKey);
  CHECK(code_of([] { io::parse_accuracies("name,score\nEOG,0.5\n"); }) == ErrorCode::Malformed);
  CHECK(code_of([] { io::parse_accuracies("channel,accuracy\nEOG\n"); }) == ErrorCode::Malformed);
  CHECK(code_of([] { io::parse_accuracies("channel,accuracy\nEOG,abc\n"); }) == ErrorCode::Malformed);
  const auto text = io::serialize_accuracies(acc);
  CHECK(io::serialize_accuracies(io::parse_accuracies(text)) == text);
}

TEST_CASE("format_number: 9 significant digits round-trip float32") {
  CHECK(io::format_number(0.0) == "0");
  CHECK(io::format_number(std::nan("")) == "nan");
  CHECK(io::format_number(46.666666666666664) == "46.6666667");
  std::mt19937 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const float f = std::bit_cast<float>(static_cast<std::uint32_t>(rng()) & 0x7f7fffffu);
    if (!std::isfinite(f)) continue;
    CHECK(std::strtof(io::format_number(f).c_str(), nullptr) == f);
  }
}

TEST_CASE("reports: spectrum table rows and determinism") {
  const auto spectrum = retrieve_filter_spectrum(synth::eegnet_like_bank(2));
  const auto csv = io::spectrum_csv(spectrum);
  CHECK(csv.rfind("frequency_hz,amplitude,scales\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.find("\n48,") != std::string::npos);
  CHECK(io::spectrum_csv(spectrum) == csv);
}

TEST_CASE("reports: empty correlation table is header-only") {
  CorrelationReport empty;
  CHECK(io::correlations_csv(empty) == "channel,modality,pearson_r,n_points,status\n");
}

TEST_CASE("reports: write_report writes a deterministic file set") {
  const auto ds = [] {
    auto cfg = synth::two_class_fixture_config(1);
    cfg.epochs_per_class = 3;
    return synth::gen_two_class_dataset(cfg);
  }();
  io::ReportTables tables;
  tables.spectrum = retrieve_filter_spectrum(synth::eegnet_like_bank(2));
  tables.bcv = channel_bcv(ds);
  tables.correlations = channel_correlations(*tables.spectrum, tables.bcv);
  tables.correlation_footer = {{"band_hz", "0.5:12"}};
  TempDir a("ra"), b("rb");
  const auto files = io::write_report(tables, a.path);
  io::write_report(tables, b.path);
  CHECK(files.size() == 2 + tables.bcv.size());
  for (const auto& f : files) CHECK(io::read_file(f) == io::read_file(b.path / f.filename()));
  CHECK(fs::exists(a.path / "bcv_Fpz-Cz.csv"));
  const auto corr = io::read_file(a.path / "correlations.csv");
  CHECK(corr.find("\n# band_hz=0.5:12\n") != std::string::npos);
  CHECK(io::channel_file_stem("a/b c") == "a_b_c");
  CHECK(code_of([&] { io::write_report(tables, a.path / "spectrum.csv" / "x"); }) == ErrorCode::Io);
}
