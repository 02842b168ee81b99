#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "filterscope/class_variation.hpp"
#include "filterscope/filter_spectrum.hpp"

namespace filterscope {

/// Closed frequency interval [low_hz, high_hz].
struct BandDefinition {
  std::string name;
  double low_hz = 0.0;
  double high_hz = 0.0;
};

BandDefinition make_band(std::string name, double low_hz, double high_hz);

namespace bands {
inline const BandDefinition delta{"delta", 0.5, 4.0};
inline const BandDefinition theta{"theta", 4.0, 8.0};
inline const BandDefinition alpha{"alpha", 8.0, 12.0};
inline const BandDefinition beta{"beta", 12.0, 30.0};
inline const BandDefinition gamma{"gamma", 30.0, 45.0};
/// delta + theta + alpha as one interval.
inline const BandDefinition lower{"lower", 0.5, 12.0};
}  // namespace bands

/// The five standard EEG bands, ascending.
std::vector<BandDefinition> eeg_bands();
/// eeg_bands() followed by the composite lower band.
std::vector<BandDefinition> default_bands();

std::vector<std::size_t> band_mask(std::span<const double> grid_hz, const BandDefinition& band);

/// Divides every value by the population std of the in-band values.
std::vector<double> rescale_by_band_std(std::span<const double> values, std::span<const double> grid_hz,
                                        const BandDefinition& band = bands::lower);

double pearson(std::span<const double> x, std::span<const double> y);

/// Spearman correlation; ties receive their average rank.
double spearman(std::span<const double> x, std::span<const double> y);

enum class ChannelStatus {
  Ok,
  /// a BCV bin needed inside the band has zero within-class spread
  InvalidBcv,
  /// BCV is constant across the band, correlation undefined
  ConstantBcv,
};

std::string_view to_string(ChannelStatus status) noexcept;

struct ChannelCorrelation {
  ChannelInfo channel;
  double pearson_r = 0.0;  // NaN unless status == Ok
  std::size_t n_points = 0;
  ChannelStatus status = ChannelStatus::Ok;
};

struct CorrelationReport {
  std::vector<ChannelCorrelation> channels;
  BandDefinition band;
  std::string model_label;
  std::string dataset_label;
};

/// Per channel: BCV resampled onto the in-band filter-spectrum grid, then
/// Pearson against the filter spectrum.
CorrelationReport channel_correlations(const FilterSpectrum& spectrum, const std::vector<BCVSpectrum>& bcvs,
                                       const BandDefinition& band = bands::lower);

/// Spearman agreement between valid channel correlations and external
/// per-channel accuracies, over channels present in both.
double rank_agreement(const CorrelationReport& report, const std::map<std::string, double>& accuracy);

}  // namespace filterscope
