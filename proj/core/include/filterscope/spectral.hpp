#pragma once

// Framework-free numerical primitives: DFT magnitudes, windows, Welch PSD,
// spectral density and linear resampling. All functions are pure.

#include <cstddef>
#include <span>
#include <vector>

namespace filterscope {

/// A real-valued time series with its sampling rate.
/// Construction validates: at least two samples, finite values, rate > 0.
class Signal {
 public:
  Signal(std::vector<double> samples, double sampling_rate_hz);

  std::span<const double> samples() const noexcept { return samples_; }
  double sampling_rate_hz() const noexcept { return rate_; }
  std::size_t size() const noexcept { return samples_.size(); }

 private:
  std::vector<double> samples_;
  double rate_;
};

enum class SpectrumKind { PowerDensity, AmplitudeDensity };

struct PowerSpectrum {
  std::vector<double> frequencies_hz;
  std::vector<double> values;
  SpectrumKind kind = SpectrumKind::PowerDensity;
};

struct DftMagnitudes {
  std::vector<double> frequencies_hz;
  std::vector<double> magnitudes;
};

/// Magnitudes of the non-negative DFT bins j = 0 .. ceil(L/2)-1 of a filter.
/// The Nyquist bin of an even-length filter is not part of the output.
/// Bin j sits at j * effective_rate_hz / L.
DftMagnitudes dft_magnitudes(std::span<const double> taps, double effective_rate_hz);

/// Number of bins dft_magnitudes() returns for a filter of length L.
constexpr std::size_t positive_bin_count(std::size_t length) noexcept { return (length + 1) / 2; }

/// Periodic Hann window, w[n] = 0.5 (1 - cos(2 pi n / length)).
std::vector<double> hann_window(std::size_t length);

struct WelchConfig {
  /// 0 selects min(256, signal length).
  std::size_t segment_length = 0;
  double overlap_fraction = 0.5;

  std::size_t resolved_segment_length(std::size_t signal_length) const noexcept;
};

/// Welch estimate with one-sided density scaling. `window` must have
/// exactly `segment_length` entries.
PowerSpectrum welch_psd(const Signal& signal, std::size_t segment_length, double overlap_fraction,
                        std::span<const double> window);

/// Convenience overload using a periodic Hann window.
PowerSpectrum welch_psd(const Signal& signal, const WelchConfig& config = {});

/// Element-wise square root of a power density.
PowerSpectrum spectral_density(const PowerSpectrum& psd);

/// Piecewise-linear interpolation; targets outside the source range are an error.
std::vector<double> resample_linear(std::span<const double> source_freqs,
                                    std::span<const double> source_values,
                                    std::span<const double> target_freqs);

}  // namespace filterscope
