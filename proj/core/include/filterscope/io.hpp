#pragma once

// Interchange formats:
//   *.weights.json        first-layer filter weights
//   *.manifest.json/.f32  labelled epochs, little-endian float32 payload
//   *.csv                 per-channel accuracies (channel,accuracy)
//   spectrum.csv, bcv_<channel>.csv, correlations.csv  report tables

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "filterscope/analysis.hpp"
#include "filterscope/class_variation.hpp"
#include "filterscope/dataset.hpp"
#include "filterscope/filter_spectrum.hpp"

namespace filterscope::io {

inline constexpr int kFormatVersion = 1;

/// 64-bit FNV-1a, lower-case hex, 16 digits.
std::string fnv1a64_hex(std::span<const std::byte> bytes);
std::string fnv1a64_hex(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Weights

/// `source` names the input in error messages.
FilterBank parse_weights(std::string_view text, std::string_view source = "<memory>");
FilterBank load_weights(const std::filesystem::path& path);
std::string serialize_weights(const FilterBank& bank);
void save_weights(const FilterBank& bank, const std::filesystem::path& path);

// Datasets

/// Reads a manifest and the payload it points to (relative to the manifest).
EpochDataset load_dataset(const std::filesystem::path& manifest_path);
std::string serialize_manifest(const EpochDataset& dataset, std::string_view payload_name,
                               std::string_view payload_digest);
std::string serialize_payload(const EpochDataset& dataset);
/// Writes <dir>/<name>.manifest.json and <dir>/<name>.f32; returns the manifest path.
std::filesystem::path save_dataset(const EpochDataset& dataset, const std::filesystem::path& dir,
                                   std::string_view name);

// Accuracies

std::map<std::string, double> parse_accuracies(std::string_view text, std::string_view source = "<memory>");
std::map<std::string, double> load_accuracies(const std::filesystem::path& path);
std::string serialize_accuracies(const std::map<std::string, double>& accuracies);

// Reports

/// Fixed-format number: 9 significant digits, "nan" for NaN.
std::string format_number(double value);

struct ReportTables {
  std::optional<FilterSpectrum> spectrum;
  std::vector<BCVSpectrum> bcv;
  std::optional<CorrelationReport> correlations;
  /// "# key=value" lines appended after the correlation rows.
  std::vector<std::pair<std::string, std::string>> correlation_footer;
};

std::string spectrum_csv(const FilterSpectrum& spectrum);
std::string bcv_csv(const BCVSpectrum& bcv);
std::string correlations_csv(const CorrelationReport& report,
                             const std::vector<std::pair<std::string, std::string>>& footer = {});
/// File-system safe form of a channel name.
std::string channel_file_stem(std::string_view channel);

/// Writes every present table into out_dir (created if missing). Returns the
/// written paths in a fixed order.
std::vector<std::filesystem::path> write_report(const ReportTables& tables,
                                                const std::filesystem::path& out_dir);

}  // namespace filterscope::io
