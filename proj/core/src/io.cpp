#include "filterscope/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include <json.hpp>

#include "filterscope/error.hpp"

namespace filterscope::io {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class JsonReader {
 public:
  explicit JsonReader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(ErrorCode code, const std::string& msg) const {
    throw Error(code, std::string(source_) + ": " + msg);
  }

  json parse(std::string_view text) const {
    json doc = json::parse(text.begin(), text.end(), nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) fail(ErrorCode::Malformed, "not valid JSON");
    if (!doc.is_object()) fail(ErrorCode::Malformed, "top level must be an object");
    return doc;
  }

  const json& field(const json& obj, const char* key, const std::string& where) const {
    if (!obj.is_object()) fail(ErrorCode::Malformed, where + " must be an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(ErrorCode::Malformed, "missing field '" + std::string(key) + "' in " + where);
    return *it;
  }

  std::int64_t integer(const json& obj, const char* key, const std::string& where) const {
    const json& v = field(obj, key, where);
    if (v.is_number_unsigned()) {
      const auto u = v.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(INT64_MAX)) fail(ErrorCode::ValueOutOfRange, where + "." + key + " too large");
      return static_cast<std::int64_t>(u);
    }
    if (!v.is_number_integer()) fail(ErrorCode::Malformed, where + "." + key + " must be an integer");
    return v.get<std::int64_t>();
  }

  double number(const json& v, const std::string& where) const {
    if (!v.is_number()) fail(ErrorCode::Malformed, where + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(ErrorCode::NonFinite, where + " is not finite");
    return d;
  }

  double number(const json& obj, const char* key, const std::string& where) const {
    return number(field(obj, key, where), where + "." + key);
  }

  std::string string(const json& obj, const char* key, const std::string& where) const {
    const json& v = field(obj, key, where);
    if (!v.is_string()) fail(ErrorCode::Malformed, where + "." + key + " must be a string");
    return v.get<std::string>();
  }

  const json& array(const json& obj, const char* key, const std::string& where) const {
    const json& v = field(obj, key, where);
    if (!v.is_array()) fail(ErrorCode::Malformed, where + "." + key + " must be an array");
    return v;
  }

  void check_version(const json& doc) const {
    const auto version = integer(doc, "format_version", "document");
    if (version != kFormatVersion) {
      fail(ErrorCode::UnsupportedVersion, "format_version " + std::to_string(version) + " is not supported");
    }
  }

 private:
  std::string_view source_;
};

std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }
std::string json_number(double v) { return json(v).dump(); }

std::string join_row(std::span<const double> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += json_number(values[i]);
  }
  return out + "]";
}

}  // namespace

std::string fnv1a64_hex(std::span<const std::byte> bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::byte b : bytes) {
    h ^= static_cast<std::uint64_t>(b);
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fnv1a64_hex(std::string_view text) {
  return fnv1a64_hex(std::as_bytes(std::span<const char>(text.data(), text.size())));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::Io, "read failed for '" + path.string() + "'");
  return contents;
}

void write_file(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
}

// ---------------------------------------------------------------- weights

FilterBank parse_weights(std::string_view text, std::string_view source) {
  const JsonReader r(source);
  const json doc = r.parse(text);
  r.check_version(doc);
  const std::string label = r.string(doc, "model_label", "document");
  const double rate = r.number(doc, "sampling_rate_hz", "document");
  if (!(rate > 0.0)) r.fail(ErrorCode::ValueOutOfRange, "sampling_rate_hz must be positive");
  const json& scales_json = r.array(doc, "scales", "document");
  if (scales_json.empty()) r.fail(ErrorCode::Malformed, "scales is empty");

  std::vector<ScaleSpec> scales;
  std::vector<WeightMatrix> weights;
  std::int64_t common_taps = -1;
  for (std::size_t s = 0; s < scales_json.size(); ++s) {
    const json& sj = scales_json[s];
    const std::string where = "scales[" + std::to_string(s) + "]";
    ScaleSpec spec;
    spec.name = r.string(sj, "name", where);
    const auto factor = r.integer(sj, "downsample_factor", where);
    if (factor < 1 || factor > INT32_MAX) r.fail(ErrorCode::ValueOutOfRange, where + ".downsample_factor must be >= 1");
    spec.downsample_factor = static_cast<int>(factor);
    const auto n_filters = r.integer(sj, "n_filters", where);
    const auto n_taps = r.integer(sj, "n_taps", where);
    if (n_filters < 1) r.fail(ErrorCode::ValueOutOfRange, where + ".n_filters must be >= 1");
    if (n_taps < 2) r.fail(ErrorCode::ValueOutOfRange, where + ".n_taps must be >= 2");
    if (common_taps >= 0 && n_taps != common_taps) {
      r.fail(ErrorCode::DimensionMismatch, where + " declares n_taps=" + std::to_string(n_taps) +
                                               " but scales[0] declares " + std::to_string(common_taps));
    }
    common_taps = n_taps;
    const json& rows = r.array(sj, "weights", where);
    if (rows.size() != static_cast<std::size_t>(n_filters)) {
      r.fail(ErrorCode::DimensionMismatch, where + " declares n_filters=" + std::to_string(n_filters) +
                                               " but has " + std::to_string(rows.size()) + " rows");
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n_filters * n_taps));
    for (std::size_t f = 0; f < rows.size(); ++f) {
      const std::string row_where = where + " (scale '" + spec.name + "'), filter " + std::to_string(f);
      if (!rows[f].is_array()) r.fail(ErrorCode::Malformed, row_where + " must be an array");
      if (rows[f].size() != static_cast<std::size_t>(n_taps)) {
        r.fail(ErrorCode::DimensionMismatch, row_where + " has " + std::to_string(rows[f].size()) +
                                                 " taps, declared n_taps=" + std::to_string(n_taps));
      }
      for (std::size_t t = 0; t < rows[f].size(); ++t) {
        values.push_back(r.number(rows[f][t], row_where + ", tap " + std::to_string(t)));
      }
    }
    scales.push_back(std::move(spec));
    weights.emplace_back(static_cast<std::size_t>(n_filters), static_cast<std::size_t>(n_taps), std::move(values));
  }
  return FilterBank(rate, std::move(scales), std::move(weights), label, fnv1a64_hex(text));
}

FilterBank load_weights(const fs::path& path) {
  const std::string text = read_file(path);
  return parse_weights(text, path.string());
}

std::string serialize_weights(const FilterBank& bank) {
  std::ostringstream out;
  out << "{\n"
      << "  \"format_version\": " << kFormatVersion << ",\n"
      << "  \"model_label\": " << json_string(bank.model_label()) << ",\n"
      << "  \"sampling_rate_hz\": " << json_number(bank.sampling_rate_hz()) << ",\n"
      << "  \"scales\": [\n";
  for (std::size_t s = 0; s < bank.scale_count(); ++s) {
    const auto& w = bank.weights(s);
    out << "    {\n"
        << "      \"name\": " << json_string(bank.scales()[s].name) << ",\n"
        << "      \"downsample_factor\": " << bank.scales()[s].downsample_factor << ",\n"
        << "      \"n_filters\": " << w.n_filters() << ",\n"
        << "      \"n_taps\": " << w.n_taps() << ",\n"
        << "      \"weights\": [\n";
    for (std::size_t f = 0; f < w.n_filters(); ++f) {
      out << "        " << join_row(w.filter(f)) << (f + 1 < w.n_filters() ? ",\n" : "\n");
    }
    out << "      ]\n"
        << "    }" << (s + 1 < bank.scale_count() ? ",\n" : "\n");
  }
  out << "  ]\n}\n";
  return out.str();
}

void save_weights(const FilterBank& bank, const fs::path& path) { write_file(path, serialize_weights(bank)); }

// ---------------------------------------------------------------- datasets

EpochDataset load_dataset(const fs::path& manifest_path) {
  const std::string text = read_file(manifest_path);
  const std::string source = manifest_path.string();
  const JsonReader r(source);
  const json doc = r.parse(text);
  r.check_version(doc);

  const double rate = r.number(doc, "sampling_rate_hz", "document");
  if (!(rate > 0.0)) r.fail(ErrorCode::ValueOutOfRange, "sampling_rate_hz must be positive");
  const auto epoch_length = r.integer(doc, "epoch_length_samples", "document");
  if (epoch_length < 2) r.fail(ErrorCode::ValueOutOfRange, "epoch_length_samples must be >= 2");
  const auto epoch_count = r.integer(doc, "epoch_count", "document");
  if (epoch_count < 0) r.fail(ErrorCode::ValueOutOfRange, "epoch_count must be >= 0");
  const std::string name = doc.contains("name") ? r.string(doc, "name", "document") : manifest_path.stem().string();

  std::vector<ChannelInfo> channels;
  const json& channels_json = r.array(doc, "channels", "document");
  if (channels_json.empty()) r.fail(ErrorCode::Malformed, "channels is empty");
  for (std::size_t c = 0; c < channels_json.size(); ++c) {
    const std::string where = "channels[" + std::to_string(c) + "]";
    ChannelInfo info;
    info.name = r.string(channels_json[c], "name", where);
    const std::string modality = r.string(channels_json[c], "modality", where);
    try {
      info.modality = parse_modality(modality);
    } catch (const Error&) {
      r.fail(ErrorCode::Malformed, where + ".modality '" + modality + "' is not one of EEG, EOG, EMG, other");
    }
    for (const auto& prev : channels) {
      if (prev.name == info.name) r.fail(ErrorCode::DuplicateKey, "duplicate channel name '" + info.name + "'");
    }
    channels.push_back(std::move(info));
  }

  std::vector<std::string> classes;
  const json& classes_json = r.array(doc, "classes", "document");
  if (classes_json.empty()) r.fail(ErrorCode::Malformed, "classes is empty");
  for (std::size_t c = 0; c < classes_json.size(); ++c) {
    if (!classes_json[c].is_string()) r.fail(ErrorCode::Malformed, "classes[" + std::to_string(c) + "] must be a string");
    classes.push_back(classes_json[c].get<std::string>());
  }

  const json& labels_json = r.array(doc, "labels", "document");
  if (labels_json.size() != static_cast<std::size_t>(epoch_count)) {
    r.fail(ErrorCode::DimensionMismatch, "labels has " + std::to_string(labels_json.size()) +
                                             " entries but epoch_count=" + std::to_string(epoch_count));
  }
  std::vector<int> labels(labels_json.size());
  for (std::size_t e = 0; e < labels_json.size(); ++e) {
    const json& v = labels_json[e];
    if (!v.is_number_integer()) r.fail(ErrorCode::Malformed, "labels[" + std::to_string(e) + "] must be an integer");
    const auto label = v.get<std::int64_t>();
    if (label < 0 || label >= static_cast<std::int64_t>(classes.size())) {
      r.fail(ErrorCode::LabelOutOfRange, "epoch " + std::to_string(e) + " has label " + std::to_string(label) +
                                             " but only " + std::to_string(classes.size()) + " classes");
    }
    labels[e] = static_cast<int>(label);
  }

  const json& payload = r.field(doc, "payload", "document");
  const std::string payload_name = r.string(payload, "path", "payload");
  const std::string expected_digest = r.string(payload, "fnv1a64", "payload");
  const fs::path payload_path = manifest_path.parent_path() / payload_name;
  const std::string bytes = read_file(payload_path);

  const auto samples = static_cast<std::size_t>(epoch_count) * channels.size() * static_cast<std::size_t>(epoch_length);
  if (bytes.size() != samples * 4) {
    r.fail(ErrorCode::SizeMismatch, "payload '" + payload_name + "' has " + std::to_string(bytes.size()) +
                                        " bytes, expected " + std::to_string(samples * 4) + " (" +
                                        std::to_string(epoch_count) + " epochs x " +
                                        std::to_string(channels.size()) + " channels x " +
                                        std::to_string(epoch_length) + " samples x 4)");
  }
  const std::string digest = fnv1a64_hex(bytes);
  if (digest != expected_digest) {
    r.fail(ErrorCode::DigestMismatch, "payload digest " + digest + " does not match manifest " + expected_digest);
  }
  std::vector<float> data(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    std::uint32_t word = 0;
    for (int b = 3; b >= 0; --b) word = (word << 8) | static_cast<unsigned char>(bytes[i * 4 + static_cast<std::size_t>(b)]);
    data[i] = std::bit_cast<float>(word);
    if (!std::isfinite(data[i])) {
      const std::size_t per_epoch = channels.size() * static_cast<std::size_t>(epoch_length);
      r.fail(ErrorCode::NonFinite, "non-finite sample at epoch " + std::to_string(i / per_epoch) + ", channel " +
                                       std::to_string((i % per_epoch) / static_cast<std::size_t>(epoch_length)) +
                                       ", sample " + std::to_string(i % static_cast<std::size_t>(epoch_length)));
    }
  }
  return EpochDataset(rate, static_cast<std::size_t>(epoch_length), std::move(channels), std::move(classes),
                      std::move(data), std::move(labels), name);
}

std::string serialize_payload(const EpochDataset& dataset) {
  const auto data = dataset.data();
  std::string out(data.size() * 4, '\0');
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto word = std::bit_cast<std::uint32_t>(data[i]);
    for (std::size_t b = 0; b < 4; ++b) out[i * 4 + b] = static_cast<char>((word >> (8 * b)) & 0xffU);
  }
  return out;
}

std::string serialize_manifest(const EpochDataset& dataset, std::string_view payload_name,
                               std::string_view payload_digest) {
  std::ostringstream out;
  out << "{\n"
      << "  \"format_version\": " << kFormatVersion << ",\n"
      << "  \"name\": " << json_string(dataset.label()) << ",\n"
      << "  \"sampling_rate_hz\": " << json_number(dataset.sampling_rate_hz()) << ",\n"
      << "  \"epoch_length_samples\": " << dataset.epoch_length_samples() << ",\n"
      << "  \"epoch_count\": " << dataset.epoch_count() << ",\n"
      << "  \"channels\": [\n";
  for (std::size_t c = 0; c < dataset.channel_count(); ++c) {
    const auto& ch = dataset.channels()[c];
    out << "    {\"name\": " << json_string(ch.name) << ", \"modality\": " << json_string(to_string(ch.modality))
        << "}" << (c + 1 < dataset.channel_count() ? ",\n" : "\n");
  }
  out << "  ],\n  \"classes\": [";
  for (std::size_t c = 0; c < dataset.class_count(); ++c) {
    out << (c ? ", " : "") << json_string(dataset.classes()[c]);
  }
  out << "],\n"
      << "  \"payload\": {\"path\": " << json_string(payload_name) << ", \"fnv1a64\": "
      << json_string(payload_digest) << "},\n"
      << "  \"labels\": [";
  for (std::size_t e = 0; e < dataset.epoch_count(); ++e) out << (e ? ", " : "") << dataset.labels()[e];
  out << "]\n}\n";
  return out.str();
}

fs::path save_dataset(const EpochDataset& dataset, const fs::path& dir, std::string_view name) {
  fs::create_directories(dir);
  const std::string payload_name = std::string(name) + ".f32";
  const std::string payload = serialize_payload(dataset);
  write_file(dir / payload_name, payload);
  const fs::path manifest = dir / (std::string(name) + ".manifest.json");
  write_file(manifest, serialize_manifest(dataset, payload_name, fnv1a64_hex(payload)));
  return manifest;
}

// ---------------------------------------------------------------- accuracies

std::map<std::string, double> parse_accuracies(std::string_view text, std::string_view source) {
  const std::string src(source);
  std::map<std::string, double> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string where = src + ":" + std::to_string(line_no);
    if (!header_seen) {
      if (line != "channel,accuracy") throw Error(ErrorCode::Malformed, where + ": expected header 'channel,accuracy'");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw Error(ErrorCode::Malformed, where + ": expected two comma-separated columns");
    }
    std::string_view name = line.substr(0, comma);
    std::string_view value_text = line.substr(comma + 1);
    while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
    while (!value_text.empty() && value_text.front() == ' ') value_text.remove_prefix(1);
    if (name.empty()) throw Error(ErrorCode::Malformed, where + ": empty channel name");
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (ec != std::errc() || ptr != value_text.data() + value_text.size()) {
      throw Error(ErrorCode::Malformed, where + ": accuracy '" + std::string(value_text) + "' is not a number");
    }
    if (!std::isfinite(value)) throw Error(ErrorCode::NonFinite, where + ": accuracy is not finite");
    if (value < 0.0 || value > 1.0) {
      throw Error(ErrorCode::ValueOutOfRange, where + ": accuracy " + std::string(value_text) + " outside [0, 1]");
    }
    if (!out.emplace(std::string(name), value).second) {
      throw Error(ErrorCode::DuplicateKey, where + ": duplicate channel '" + std::string(name) + "'");
    }
  }
  if (!header_seen) throw Error(ErrorCode::Malformed, src + ": empty accuracy table");
  return out;
}

std::map<std::string, double> load_accuracies(const fs::path& path) {
  return parse_accuracies(read_file(path), path.string());
}

std::string serialize_accuracies(const std::map<std::string, double>& accuracies) {
  std::string out = "channel,accuracy\n";
  for (const auto& [name, value] : accuracies) out += name + "," + format_number(value) + "\n";
  return out;
}

// ---------------------------------------------------------------- reports

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string spectrum_csv(const FilterSpectrum& spectrum) {
  std::string out = "frequency_hz,amplitude,scales\n";
  for (std::size_t i = 0; i < spectrum.grid.size(); ++i) {
    std::string scales;
    if (i < spectrum.contributing_scales.size()) {
      for (int s : spectrum.contributing_scales[i]) {
        if (!scales.empty()) scales += ';';
        scales += static_cast<std::size_t>(s) < spectrum.scale_names.size() ? spectrum.scale_names[static_cast<std::size_t>(s)]
                                                                            : std::to_string(s);
      }
    }
    out += format_number(spectrum.grid.entries[i].hz) + "," + format_number(spectrum.amplitudes[i]) + "," + scales + "\n";
  }
  return out;
}

std::string bcv_csv(const BCVSpectrum& bcv) {
  std::string out = "channel,frequency_hz,between_std,within_std,ratio,valid\n";
  for (std::size_t k = 0; k < bcv.frequencies_hz.size(); ++k) {
    out += bcv.channel.name + "," + format_number(bcv.frequencies_hz[k]) + "," + format_number(bcv.between_std[k]) +
           "," + format_number(bcv.within_std[k]) + "," + format_number(bcv.ratio[k]) + "," +
           (bcv.valid[k] ? "1" : "0") + "\n";
  }
  return out;
}

std::string correlations_csv(const CorrelationReport& report,
                             const std::vector<std::pair<std::string, std::string>>& footer) {
  std::string out = "channel,modality,pearson_r,n_points,status\n";
  for (const auto& row : report.channels) {
    out += row.channel.name + "," + std::string(to_string(row.channel.modality)) + "," +
           format_number(row.pearson_r) + "," + std::to_string(row.n_points) + "," +
           std::string(to_string(row.status)) + "\n";
  }
  for (const auto& [key, value] : footer) out += "# " + key + "=" + value + "\n";
  return out;
}

std::string channel_file_stem(std::string_view channel) {
  std::string out;
  for (char c : channel) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                      c == '_' || c == '.';
    out += keep ? c : '_';
  }
  return out.empty() ? "_" : out;
}

std::vector<fs::path> write_report(const ReportTables& tables, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + out_dir.string() + "': " + ec.message());
  std::vector<fs::path> written;
  if (tables.spectrum) {
    written.push_back(out_dir / "spectrum.csv");
    write_file(written.back(), spectrum_csv(*tables.spectrum));
  }
  for (const auto& bcv : tables.bcv) {
    written.push_back(out_dir / ("bcv_" + channel_file_stem(bcv.channel.name) + ".csv"));
    write_file(written.back(), bcv_csv(bcv));
  }
  if (tables.correlations) {
    written.push_back(out_dir / "correlations.csv");
    write_file(written.back(), correlations_csv(*tables.correlations, tables.correlation_footer));
  }
  return written;
}

}  // namespace filterscope::io
