#include "filterscope/filter_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "filterscope/error.hpp"
#include "filterscope/spectral.hpp"

namespace filterscope {

WeightMatrix::WeightMatrix(std::size_t n_filters, std::size_t n_taps, std::vector<double> values)
    : n_filters_(n_filters), n_taps_(n_taps), values_(std::move(values)) {
  if (values_.size() != n_filters_ * n_taps_) {
    throw Error(ErrorCode::DimensionMismatch,
                "weight matrix holds " + std::to_string(values_.size()) + " values, expected " +
                    std::to_string(n_filters_) + " x " + std::to_string(n_taps_));
  }
}

std::span<const double> WeightMatrix::filter(std::size_t index) const {
  if (index >= n_filters_) throw Error(ErrorCode::OutOfRange, "filter index out of range");
  return std::span<const double>(values_).subspan(index * n_taps_, n_taps_);
}

FilterBank::FilterBank(double sampling_rate_hz, std::vector<ScaleSpec> scales,
                       std::vector<WeightMatrix> weights, std::string model_label,
                       std::string source_digest)
    : rate_(sampling_rate_hz),
      scales_(std::move(scales)),
      weights_(std::move(weights)),
      model_label_(std::move(model_label)),
      source_digest_(std::move(source_digest)) {
  if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
    throw Error(ErrorCode::InvalidBank, "sampling rate must be positive and finite");
  }
  if (scales_.empty()) throw Error(ErrorCode::InvalidBank, "bank has no scales");
  if (scales_.size() != weights_.size()) {
    throw Error(ErrorCode::InvalidBank, "scale count differs from weight matrix count");
  }
  std::set<int> factors;
  for (std::size_t s = 0; s < scales_.size(); ++s) {
    const int d = scales_[s].downsample_factor;
    if (d < 1) {
      throw Error(ErrorCode::InvalidBank, "scale " + std::to_string(s) + " has downsample factor < 1");
    }
    if (!factors.insert(d).second) {
      throw Error(ErrorCode::InvalidBank, "duplicate downsample factor " + std::to_string(d));
    }
    const auto& w = weights_[s];
    if (w.n_filters() < 1) {
      throw Error(ErrorCode::InvalidBank, "scale " + std::to_string(s) + " has no filters");
    }
    if (w.n_taps() != weights_.front().n_taps()) {
      throw Error(ErrorCode::InvalidBank, "scale " + std::to_string(s) + " has " +
                                              std::to_string(w.n_taps()) + " taps, scale 0 has " +
                                              std::to_string(weights_.front().n_taps()));
    }
    for (double v : w.values()) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidBank, "scale " + std::to_string(s) + " has a non-finite weight");
      }
    }
  }
  if (n_taps() < 2) {
    throw Error(ErrorCode::InvalidFilterLength, "filters need at least 2 taps");
  }
}

double FilterBank::effective_rate_hz(std::size_t scale) const {
  return rate_ / static_cast<double>(scales_.at(scale).downsample_factor);
}

FilterBank FilterBank::with_downsample_factors(std::span<const int> factors) const {
  if (factors.size() != scales_.size()) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(factors.size()) +
                                                " downsample factors given for " +
                                                std::to_string(scales_.size()) + " scales");
  }
  auto scales = scales_;
  for (std::size_t s = 0; s < scales.size(); ++s) scales[s].downsample_factor = factors[s];
  return FilterBank(rate_, std::move(scales), weights_, model_label_, source_digest_);
}

std::vector<double> FrequencyGrid::hz() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.hz);
  return out;
}

std::vector<Rational> FrequencyGrid::exact() const {
  std::vector<Rational> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.cycles_per_sample);
  return out;
}

double rational_to_hz(const Rational& cycles_per_sample, double sampling_rate_hz) {
  return static_cast<double>(cycles_per_sample.numerator()) * sampling_rate_hz /
         static_cast<double>(cycles_per_sample.denominator());
}

FrequencyGrid scale_frequencies(const FilterBank& bank) {
  const auto n_taps = static_cast<std::int64_t>(bank.n_taps());
  const std::size_t bins = positive_bin_count(bank.n_taps());
  FrequencyGrid grid;
  grid.entries.reserve(bank.scale_count() * bins);
  for (std::size_t s = 0; s < bank.scale_count(); ++s) {
    const std::int64_t d = bank.scales()[s].downsample_factor;
    for (std::size_t j = 0; j < bins; ++j) {
      GridEntry e;
      e.cycles_per_sample = Rational(static_cast<std::int64_t>(j), d * n_taps);
      e.hz = rational_to_hz(e.cycles_per_sample, bank.sampling_rate_hz());
      e.scale = static_cast<int>(s);
      e.bin = static_cast<int>(j);
      grid.entries.push_back(e);
    }
  }
  return grid;
}

FrequencyGrid unique_frequencies(const FrequencyGrid& scale_grid, double sampling_rate_hz) {
  std::vector<Rational> values = scale_grid.exact();
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  FrequencyGrid out;
  out.entries.reserve(values.size());
  for (const auto& r : values) {
    GridEntry e;
    e.cycles_per_sample = r;
    e.hz = rational_to_hz(r, sampling_rate_hz);
    out.entries.push_back(e);
  }
  return out;
}

UnificationMatrix::UnificationMatrix(std::vector<std::size_t> column_to_row, std::size_t rows)
    : column_to_row_(std::move(column_to_row)), row_counts_(rows, 0), row_columns_(rows) {
  for (std::size_t c = 0; c < column_to_row_.size(); ++c) {
    const std::size_t r = column_to_row_[c];
    if (r >= rows) throw Error(ErrorCode::InternalConsistency, "assignment row out of range");
    ++row_counts_[r];
    row_columns_[r].push_back(c);
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_counts_[r] == 0) {
      throw Error(ErrorCode::InternalConsistency,
                  "unified bin " + std::to_string(r) + " has no scale-based source");
    }
  }
}

double UnificationMatrix::value(std::size_t row, std::size_t col) const {
  if (row >= rows() || col >= cols()) throw Error(ErrorCode::OutOfRange, "matrix index out of range");
  return column_to_row_[col] == row ? 1.0 / static_cast<double>(row_counts_[row]) : 0.0;
}

std::vector<std::vector<double>> UnificationMatrix::dense() const {
  std::vector<std::vector<double>> m(rows(), std::vector<double>(cols(), 0.0));
  for (std::size_t c = 0; c < cols(); ++c) {
    const std::size_t r = column_to_row_[c];
    m[r][c] = 1.0 / static_cast<double>(row_counts_[r]);
  }
  return m;
}

std::vector<double> UnificationMatrix::apply(std::span<const double> v) const {
  if (v.size() != cols()) throw Error(ErrorCode::InvalidArgument, "vector length differs from column count");
  std::vector<double> out(rows(), 0.0);
  for (std::size_t r = 0; r < rows(); ++r) {
    const double weight = 1.0 / static_cast<double>(row_counts_[r]);
    double acc = 0.0;
    for (std::size_t c : row_columns_[r]) acc += weight * v[c];
    out[r] = acc;
  }
  return out;
}

std::vector<Rational> UnificationMatrix::apply_exact(std::span<const Rational> v) const {
  if (v.size() != cols()) throw Error(ErrorCode::InvalidArgument, "vector length differs from column count");
  std::vector<Rational> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    const Rational weight(1, static_cast<std::int64_t>(row_counts_[r]));
    Rational acc;
    for (std::size_t c : row_columns_[r]) acc = acc + weight * v[c];
    out[r] = acc;
  }
  return out;
}

UnificationMatrix build_unification_matrix(const FrequencyGrid& scale_grid,
                                           const FrequencyGrid& unified_grid) {
  const auto unified = unified_grid.exact();
  for (std::size_t i = 1; i < unified.size(); ++i) {
    if (!(unified[i - 1] < unified[i])) {
      throw Error(ErrorCode::InternalConsistency, "unified grid is not strictly ascending");
    }
  }
  std::vector<std::size_t> column_to_row(scale_grid.size());
  for (std::size_t c = 0; c < scale_grid.size(); ++c) {
    const Rational& f = scale_grid.entries[c].cycles_per_sample;
    const auto it = std::lower_bound(unified.begin(), unified.end(), f);
    if (it == unified.end() || *it != f) {
      throw Error(ErrorCode::InternalConsistency,
                  "scale-based frequency " + f.to_string() + " missing from unified grid");
    }
    column_to_row[c] = static_cast<std::size_t>(it - unified.begin());
  }
  return UnificationMatrix(std::move(column_to_row), unified.size());
}

FilterSpectrum retrieve_filter_spectrum(const FilterBank& bank) {
  const std::size_t bins = positive_bin_count(bank.n_taps());
  std::vector<double> per_scale;
  per_scale.reserve(bank.scale_count() * bins);

  for (std::size_t s = 0; s < bank.scale_count(); ++s) {
    const auto& w = bank.weights(s);
    std::vector<double> sum(bins, 0.0);
    for (std::size_t f = 0; f < w.n_filters(); ++f) {
      const auto mags = dft_magnitudes(w.filter(f), bank.effective_rate_hz(s));
      for (std::size_t j = 0; j < bins; ++j) sum[j] += mags.magnitudes[j];
    }
    for (std::size_t j = 0; j < bins; ++j) {
      per_scale.push_back(sum[j] / static_cast<double>(w.n_filters()));
    }
  }

  const FrequencyGrid scale_grid = scale_frequencies(bank);
  FilterSpectrum spectrum;
  spectrum.grid = unique_frequencies(scale_grid, bank.sampling_rate_hz());
  const UnificationMatrix unification = build_unification_matrix(scale_grid, spectrum.grid);
  spectrum.amplitudes = unification.apply(per_scale);

  spectrum.contributing_scales.assign(spectrum.grid.size(), {});
  for (std::size_t c = 0; c < scale_grid.size(); ++c) {
    auto& scales = spectrum.contributing_scales[unification.row_of(c)];
    const int s = scale_grid.entries[c].scale;
    if (scales.empty() || scales.back() != s) scales.push_back(s);
  }
  for (const auto& scale : bank.scales()) spectrum.scale_names.push_back(scale.name);
  spectrum.model_label = bank.model_label();
  spectrum.weights_digest = bank.source_digest();
  return spectrum;
}

}  // namespace filterscope
