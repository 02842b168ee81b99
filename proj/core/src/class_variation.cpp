#include "filterscope/class_variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "filterscope/error.hpp"
#include "filterscope/parallel.hpp"

namespace filterscope {

MeanStd mean_std(const std::vector<double>& values, StdKind kind) {
  const std::size_t n = values.size();
  if (n == 0) throw Error(ErrorCode::InsufficientSamples, "no values");
  if (kind == StdKind::Sample && n < 2) {
    throw Error(ErrorCode::InsufficientSamples, "sample standard deviation needs 2 values");
  }
  const double shift = values.front();
  double offset_sum = 0.0;
  for (double v : values) offset_sum += v - shift;
  const double mean = shift + offset_sum / static_cast<double>(n);
  double sq = 0.0;
  for (double v : values) {
    const double d = v - mean;
    sq += d * d;
  }
  const double denom = static_cast<double>(kind == StdKind::Sample ? n - 1 : n);
  return {mean, std::sqrt(sq / denom)};
}

PowerSpectrum per_sample_density(const EpochDataset& dataset, std::size_t channel, std::size_t epoch,
                                 const WelchConfig& welch) {
  const auto raw = dataset.epoch(epoch, channel);
  Signal signal(std::vector<double>(raw.begin(), raw.end()), dataset.sampling_rate_hz());
  return spectral_density(welch_psd(signal, welch));
}

ClassSpectralStats class_statistics(const EpochDataset& dataset, std::size_t channel,
                                    const WelchConfig& welch, StdKind kind, unsigned threads) {
  if (channel >= dataset.channel_count()) throw Error(ErrorCode::OutOfRange, "channel index out of range");
  const std::size_t n_classes = dataset.class_count();
  std::vector<std::vector<std::size_t>> members(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) {
    members[c] = dataset.epochs_of_class(static_cast<int>(c));
    if (members[c].size() < 2) {
      throw Error(ErrorCode::InsufficientSamples,
                  "class '" + dataset.classes()[c] + "' has " + std::to_string(members[c].size()) +
                      " epoch(s); at least 2 are required");
    }
  }

  std::vector<PowerSpectrum> densities(dataset.epoch_count());
  parallel_for(dataset.epoch_count(), threads, [&](std::size_t e) {
    densities[e] = per_sample_density(dataset, channel, e, welch);
  });

  ClassSpectralStats stats;
  stats.channel = dataset.channels()[channel];
  stats.frequencies_hz = densities.front().frequencies_hz;
  const std::size_t bins = stats.frequencies_hz.size();
  stats.class_means.assign(n_classes, std::vector<double>(bins));
  stats.class_within_std.assign(n_classes, std::vector<double>(bins));
  stats.class_counts.resize(n_classes);

  std::vector<double> column;
  for (std::size_t c = 0; c < n_classes; ++c) {
    stats.class_counts[c] = members[c].size();
    column.resize(members[c].size());
    for (std::size_t k = 0; k < bins; ++k) {
      for (std::size_t i = 0; i < members[c].size(); ++i) column[i] = densities[members[c][i]].values[k];
      const auto ms = mean_std(column, kind);
      stats.class_means[c][k] = ms.mean;
      stats.class_within_std[c][k] = ms.std;
    }
  }
  return stats;
}

BCVSpectrum between_class_variation(const ClassSpectralStats& stats, StdKind kind) {
  const std::size_t n_classes = stats.class_means.size();
  if (n_classes < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "between-class variation needs at least 2 classes, got " + std::to_string(n_classes));
  }
  if (stats.class_within_std.size() != n_classes) {
    throw Error(ErrorCode::InvalidArgument, "class mean and std counts differ");
  }
  const std::size_t bins = stats.frequencies_hz.size();
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (stats.class_means[c].size() != bins || stats.class_within_std[c].size() != bins) {
      throw Error(ErrorCode::InvalidArgument, "class " + std::to_string(c) + " is on a different grid");
    }
  }

  BCVSpectrum out;
  out.channel = stats.channel;
  out.frequencies_hz = stats.frequencies_hz;
  out.between_std.resize(bins);
  out.within_std.resize(bins);
  out.ratio.resize(bins);
  out.valid.resize(bins);
  std::vector<double> means(n_classes);
  std::vector<double> stds(n_classes);
  for (std::size_t k = 0; k < bins; ++k) {
    for (std::size_t c = 0; c < n_classes; ++c) {
      means[c] = stats.class_means[c][k];
      stds[c] = stats.class_within_std[c][k];
    }
    // Sorted reduction order: relabelling classes cannot change a single bit.
    std::sort(means.begin(), means.end());
    std::sort(stds.begin(), stds.end());
    double within = 0.0;
    for (double s : stds) within += s;
    within /= static_cast<double>(n_classes);
    const double between = mean_std(means, kind).std;
    out.between_std[k] = between;
    out.within_std[k] = within;
    out.valid[k] = within > 0.0;
    out.ratio[k] = out.valid[k] ? between / within : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

std::vector<BCVSpectrum> channel_bcv(const EpochDataset& dataset, const WelchConfig& welch,
                                     StdKind kind, unsigned threads) {
  const std::size_t n = dataset.channel_count();
  std::vector<BCVSpectrum> out(n);
  // Spread workers across channels when there are enough of them, else across epochs.
  const bool per_channel = threads > 1 && n >= threads;
  const unsigned inner = per_channel ? 1 : threads;
  parallel_for(n, per_channel ? threads : 1, [&](std::size_t ch) {
    out[ch] = between_class_variation(class_statistics(dataset, ch, welch, kind, inner), kind);
  });
  return out;
}

}  // namespace filterscope
