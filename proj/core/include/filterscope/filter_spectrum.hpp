#pragma once

// Filter spectrum retrieval from first-layer convolution weights, including
// the assignment of multi-scale frequency bins onto one unified grid.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "filterscope/rational.hpp"

namespace filterscope {

struct ScaleSpec {
  std::string name;
  /// Integer decimation in front of this scale's convolution.
  int downsample_factor = 1;
};

/// N_f filters x N_t taps, row-major.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t n_filters, std::size_t n_taps, std::vector<double> values);

  std::size_t n_filters() const noexcept { return n_filters_; }
  std::size_t n_taps() const noexcept { return n_taps_; }
  std::span<const double> filter(std::size_t index) const;
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t n_filters_ = 0;
  std::size_t n_taps_ = 0;
  std::vector<double> values_;
};

/// Trained first-layer weights for all scales. Immutable after construction;
/// the constructor enforces the bank invariants.
class FilterBank {
 public:
  FilterBank(double sampling_rate_hz, std::vector<ScaleSpec> scales, std::vector<WeightMatrix> weights,
             std::string model_label = {}, std::string source_digest = {});

  double sampling_rate_hz() const noexcept { return rate_; }
  std::size_t scale_count() const noexcept { return scales_.size(); }
  std::size_t n_taps() const noexcept { return weights_.front().n_taps(); }
  const std::vector<ScaleSpec>& scales() const noexcept { return scales_; }
  const WeightMatrix& weights(std::size_t scale) const { return weights_.at(scale); }
  double effective_rate_hz(std::size_t scale) const;
  const std::string& model_label() const noexcept { return model_label_; }
  const std::string& source_digest() const noexcept { return source_digest_; }

  /// Same weights under different per-scale decimation factors.
  FilterBank with_downsample_factors(std::span<const int> factors) const;

 private:
  double rate_;
  std::vector<ScaleSpec> scales_;
  std::vector<WeightMatrix> weights_;
  std::string model_label_;
  std::string source_digest_;
};

struct GridEntry {
  /// Cycles per input sample, j / (d * N_t), reduced.
  Rational cycles_per_sample;
  double hz = 0.0;
  /// Origin in a scale-based grid; -1 on unified grids.
  int scale = -1;
  int bin = -1;
};

struct FrequencyGrid {
  std::vector<GridEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::vector<double> hz() const;
  std::vector<Rational> exact() const;
};

/// Frequency of an exact grid value at the given input sampling rate.
double rational_to_hz(const Rational& cycles_per_sample, double sampling_rate_hz);

/// Scale-major, bin-ascending list of every retained DFT bin of every scale.
FrequencyGrid scale_frequencies(const FilterBank& bank);

/// Sorted, duplicate-free frequencies of a scale-based grid (exact comparison).
FrequencyGrid unique_frequencies(const FrequencyGrid& scale_grid, double sampling_rate_hz);

/// Row-normalised 0/1 assignment from scale-based bins (columns) to unified
/// bins (rows). Stored sparsely: each column has exactly one nonzero.
class UnificationMatrix {
 public:
  UnificationMatrix(std::vector<std::size_t> column_to_row, std::size_t rows);

  std::size_t rows() const noexcept { return row_counts_.size(); }
  std::size_t cols() const noexcept { return column_to_row_.size(); }
  std::size_t row_of(std::size_t col) const { return column_to_row_.at(col); }
  /// D_ii, the number of scale-based bins assigned to unified bin i.
  std::size_t row_count(std::size_t row) const { return row_counts_.at(row); }
  double value(std::size_t row, std::size_t col) const;
  std::vector<std::vector<double>> dense() const;

  /// S_unif * v, accumulated column-ascending per row.
  std::vector<double> apply(std::span<const double> v) const;
  std::vector<Rational> apply_exact(std::span<const Rational> v) const;

 private:
  std::vector<std::size_t> column_to_row_;
  std::vector<std::size_t> row_counts_;
  // columns grouped by row in ascending order
  std::vector<std::vector<std::size_t>> row_columns_;
};

UnificationMatrix build_unification_matrix(const FrequencyGrid& scale_grid,
                                           const FrequencyGrid& unified_grid);

struct FilterSpectrum {
  FrequencyGrid grid;
  std::vector<double> amplitudes;
  /// Scale indices contributing to each unified bin, ascending.
  std::vector<std::vector<int>> contributing_scales;
  std::vector<std::string> scale_names;
  std::string model_label;
  std::string weights_digest;
};

/// Mean DFT magnitude per scale, merged onto the unified grid.
FilterSpectrum retrieve_filter_spectrum(const FilterBank& bank);

}  // namespace filterscope
