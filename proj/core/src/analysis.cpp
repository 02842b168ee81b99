#include "filterscope/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "filterscope/error.hpp"
#include "filterscope/spectral.hpp"

namespace filterscope {
namespace {

double population_std(std::span<const double> v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return std::sqrt(sq / static_cast<double>(v.size()));
}

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

BandDefinition make_band(std::string name, double low_hz, double high_hz) {
  if (!(low_hz >= 0.0 && low_hz < high_hz) || !std::isfinite(high_hz)) {
    throw Error(ErrorCode::InvalidArgument, "band needs 0 <= low < high");
  }
  return {std::move(name), low_hz, high_hz};
}

std::vector<BandDefinition> eeg_bands() {
  return {bands::delta, bands::theta, bands::alpha, bands::beta, bands::gamma};
}

std::vector<BandDefinition> default_bands() {
  auto out = eeg_bands();
  out.push_back(bands::lower);
  return out;
}

std::vector<std::size_t> band_mask(std::span<const double> grid_hz, const BandDefinition& band) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < grid_hz.size(); ++i) {
    if (grid_hz[i] >= band.low_hz && grid_hz[i] <= band.high_hz) idx.push_back(i);
  }
  if (idx.empty()) {
    throw Error(ErrorCode::EmptyBand, "no grid point in band '" + band.name + "' [" +
                                          std::to_string(band.low_hz) + ", " +
                                          std::to_string(band.high_hz) + "] Hz");
  }
  return idx;
}

std::vector<double> rescale_by_band_std(std::span<const double> values, std::span<const double> grid_hz,
                                        const BandDefinition& band) {
  if (values.size() != grid_hz.size()) {
    throw Error(ErrorCode::InvalidArgument, "values and grid differ in length");
  }
  const auto idx = band_mask(grid_hz, band);
  if (idx.size() < 2) {
    throw Error(ErrorCode::DegenerateSpectrum, "rescaling needs at least 2 in-band points");
  }
  std::vector<double> in_band;
  in_band.reserve(idx.size());
  for (std::size_t i : idx) in_band.push_back(values[i]);
  const double sd = population_std(in_band);
  if (!(sd > 0.0) || !std::isfinite(sd)) {
    throw Error(ErrorCode::DegenerateSpectrum, "in-band values have zero variance");
  }
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / sd;
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "pearson inputs differ in length");
  if (x.size() < 3) throw Error(ErrorCode::InsufficientData, "pearson needs at least 3 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw Error(ErrorCode::UndefinedCorrelation, "correlation of a constant series");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "spearman inputs differ in length");
  if (x.size() < 3) throw Error(ErrorCode::InsufficientData, "spearman needs at least 3 points");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

std::string_view to_string(ChannelStatus status) noexcept {
  switch (status) {
    case ChannelStatus::Ok: return "ok";
    case ChannelStatus::InvalidBcv: return "invalid_bcv";
    case ChannelStatus::ConstantBcv: return "constant_bcv";
  }
  return "ok";
}

CorrelationReport channel_correlations(const FilterSpectrum& spectrum, const std::vector<BCVSpectrum>& bcvs,
                                       const BandDefinition& band) {
  const auto grid = spectrum.grid.hz();
  const auto idx = band_mask(grid, band);
  if (idx.size() < 3) {
    throw Error(ErrorCode::InsufficientData, "band '" + band.name + "' holds " +
                                                 std::to_string(idx.size()) +
                                                 " filter-spectrum points; at least 3 are required");
  }
  std::vector<double> targets, amplitudes;
  for (std::size_t i : idx) {
    targets.push_back(grid[i]);
    amplitudes.push_back(spectrum.amplitudes.at(i));
  }
  {
    const double first = amplitudes.front();
    if (std::all_of(amplitudes.begin(), amplitudes.end(), [&](double a) { return a == first; })) {
      throw Error(ErrorCode::UndefinedCorrelation, "filter spectrum is constant inside the band");
    }
  }

  CorrelationReport report;
  report.band = band;
  report.model_label = spectrum.model_label;
  for (const auto& bcv : bcvs) {
    ChannelCorrelation row;
    row.channel = bcv.channel;
    row.n_points = targets.size();
    row.pearson_r = std::numeric_limits<double>::quiet_NaN();

    const auto& f = bcv.frequencies_hz;
    if (f.size() < 2 || targets.front() < f.front() || targets.back() > f.back()) {
      throw Error(ErrorCode::OutOfRange, "BCV grid of channel '" + bcv.channel.name +
                                             "' does not cover the band grid");
    }
    // Every BCV bin touched by interpolation must be valid.
    bool usable = true;
    for (double t : targets) {
      const auto hi = std::lower_bound(f.begin(), f.end(), t);
      const auto k = static_cast<std::size_t>(hi - f.begin());
      if (!bcv.valid.at(k)) usable = false;
      if (f[k] != t && (k == 0 || !bcv.valid.at(k - 1))) usable = false;
    }
    if (!usable) {
      row.status = ChannelStatus::InvalidBcv;
      report.channels.push_back(row);
      continue;
    }
    const auto resampled = resample_linear(f, bcv.ratio, targets);
    try {
      row.pearson_r = pearson(amplitudes, resampled);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UndefinedCorrelation) throw;
      row.status = ChannelStatus::ConstantBcv;
    }
    report.channels.push_back(row);
  }
  return report;
}

double rank_agreement(const CorrelationReport& report, const std::map<std::string, double>& accuracy) {
  std::vector<double> r, acc;
  for (const auto& row : report.channels) {
    if (row.status != ChannelStatus::Ok) continue;
    const auto it = accuracy.find(row.channel.name);
    if (it == accuracy.end()) continue;
    r.push_back(row.pearson_r);
    acc.push_back(it->second);
  }
  if (r.size() < 3) {
    throw Error(ErrorCode::InsufficientData, std::to_string(r.size()) +
                                                 " channel(s) overlap between report and accuracies;"
                                                 " at least 3 are required");
  }
  return spearman(r, acc);
}

}  // namespace filterscope
