#pragma once

// Between-class spectral variation: how far class-mean spectral densities
// spread apart, relative to the spread of epochs within each class.

#include <cstddef>
#include <vector>

#include "filterscope/dataset.hpp"
#include "filterscope/spectral.hpp"

namespace filterscope {

enum class StdKind { Population, Sample };

struct ClassSpectralStats {
  ChannelInfo channel;
  std::vector<double> frequencies_hz;
  /// [class][bin]
  std::vector<std::vector<double>> class_means;
  std::vector<std::vector<double>> class_within_std;
  std::vector<std::size_t> class_counts;
};

struct BCVSpectrum {
  ChannelInfo channel;
  std::vector<double> frequencies_hz;
  std::vector<double> between_std;
  std::vector<double> within_std;
  /// between / within; NaN where the bin is invalid.
  std::vector<double> ratio;
  /// false where within_std == 0
  std::vector<bool> valid;
};

/// Mean and standard deviation of `values` in index order. The mean is taken
/// relative to the first value, so identical inputs give exactly zero spread.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};
MeanStd mean_std(const std::vector<double>& values, StdKind kind);

/// Square root of the Welch PSD of one epoch of one channel.
PowerSpectrum per_sample_density(const EpochDataset& dataset, std::size_t channel, std::size_t epoch,
                                 const WelchConfig& welch = {});

ClassSpectralStats class_statistics(const EpochDataset& dataset, std::size_t channel,
                                    const WelchConfig& welch = {}, StdKind kind = StdKind::Population,
                                    unsigned threads = 1);

BCVSpectrum between_class_variation(const ClassSpectralStats& stats,
                                    StdKind kind = StdKind::Population);

/// BCV for every channel, in declared channel order.
std::vector<BCVSpectrum> channel_bcv(const EpochDataset& dataset, const WelchConfig& welch = {},
                                     StdKind kind = StdKind::Population, unsigned threads = 1);

}  // namespace filterscope
