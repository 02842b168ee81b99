#include "filterscope/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "filterscope/error.hpp"

namespace filterscope {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// |X_k|^2 for k = 0 .. bins-1 by direct summation with an exact-index twiddle table.
void direct_power(std::span<const double> x, std::size_t bins, std::span<double> out) {
  const std::size_t n = x.size();
  std::vector<double> cos_table(n), sin_table(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double angle = kTwoPi * static_cast<double>(m) / static_cast<double>(n);
    cos_table[m] = std::cos(angle);
    sin_table[m] = std::sin(angle);
  }
  for (std::size_t k = 0; k < bins; ++k) {
    double re = 0.0;
    double im = 0.0;
    std::size_t idx = 0;
    for (std::size_t m = 0; m < n; ++m) {
      re += x[m] * cos_table[idx];
      im -= x[m] * sin_table[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    out[k] = re * re + im * im;
  }
}

// In-place iterative radix-2 FFT; n must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<std::complex<double>> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double angle = -kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    twiddle[k] = {std::cos(angle), std::sin(angle)};
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto u = a[start + k];
        const auto v = a[start + k + len / 2] * twiddle[k * stride];
        a[start + k] = u + v;
        a[start + k + len / 2] = u - v;
      }
    }
  }
}

void power_bins(std::span<const double> x, std::size_t bins, std::span<double> out) {
  if (!is_power_of_two(x.size()) || x.size() < 8) {
    direct_power(x, bins, out);
    return;
  }
  std::vector<std::complex<double>> buf(x.begin(), x.end());
  fft_radix2(buf);
  for (std::size_t k = 0; k < bins; ++k) out[k] = std::norm(buf[k]);
}

}  // namespace

Signal::Signal(std::vector<double> samples, double sampling_rate_hz)
    : samples_(std::move(samples)), rate_(sampling_rate_hz) {
  if (samples_.size() < 2) {
    throw Error(ErrorCode::InvalidInput, "signal needs at least 2 samples");
  }
  if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
    throw Error(ErrorCode::InvalidInput, "sampling rate must be positive and finite");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw Error(ErrorCode::InvalidInput, "non-finite sample at index " + std::to_string(i));
    }
  }
}

DftMagnitudes dft_magnitudes(std::span<const double> taps, double effective_rate_hz) {
  const std::size_t length = taps.size();
  if (length < 2) {
    throw Error(ErrorCode::InvalidFilterLength,
                "filter length " + std::to_string(length) + " is below 2");
  }
  if (!(effective_rate_hz > 0.0) || !std::isfinite(effective_rate_hz)) {
    throw Error(ErrorCode::InvalidInput, "effective rate must be positive and finite");
  }
  for (std::size_t i = 0; i < length; ++i) {
    if (!std::isfinite(taps[i])) {
      throw Error(ErrorCode::InvalidInput, "non-finite tap at index " + std::to_string(i));
    }
  }

  const std::size_t bins = positive_bin_count(length);
  DftMagnitudes out;
  out.frequencies_hz.resize(bins);
  out.magnitudes.resize(bins);
  direct_power(taps, bins, out.magnitudes);
  for (std::size_t j = 0; j < bins; ++j) {
    out.magnitudes[j] = std::sqrt(out.magnitudes[j]);
    out.frequencies_hz[j] = static_cast<double>(j) * effective_rate_hz / static_cast<double>(length);
  }
  return out;
}

std::vector<double> hann_window(std::size_t length) {
  if (length < 1) throw Error(ErrorCode::InvalidArgument, "window length must be at least 1");
  std::vector<double> w(length);
  for (std::size_t n = 0; n < length; ++n) {
    w[n] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(n) / static_cast<double>(length)));
  }
  return w;
}

std::size_t WelchConfig::resolved_segment_length(std::size_t signal_length) const noexcept {
  if (segment_length != 0) return segment_length;
  return std::min<std::size_t>(256, signal_length);
}

PowerSpectrum welch_psd(const Signal& signal, std::size_t segment_length, double overlap_fraction,
                        std::span<const double> window) {
  const std::size_t n = signal.size();
  if (segment_length < 2) {
    throw Error(ErrorCode::InvalidSegmentation, "segment length must be at least 2");
  }
  if (segment_length > n) {
    throw Error(ErrorCode::InvalidSegmentation, "segment length " + std::to_string(segment_length) +
                                                    " exceeds signal length " + std::to_string(n));
  }
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidSegmentation, "overlap fraction must lie in [0, 1)");
  }
  if (window.size() != segment_length) {
    throw Error(ErrorCode::InvalidArgument, "window length does not match segment length");
  }
  const auto hop = static_cast<std::size_t>(
      std::floor(static_cast<double>(segment_length) * (1.0 - overlap_fraction)));
  if (hop == 0) throw Error(ErrorCode::InvalidSegmentation, "overlap leaves a zero hop");

  double window_energy = 0.0;
  for (double w : window) window_energy += w * w;
  if (!(window_energy > 0.0)) throw Error(ErrorCode::InvalidArgument, "window has zero energy");

  const std::size_t bins = segment_length / 2 + 1;
  const auto x = signal.samples();
  std::vector<double> accum(bins, 0.0);
  std::vector<double> segment(segment_length);
  std::vector<double> power(bins);
  std::size_t segments = 0;
  for (std::size_t start = 0; start + segment_length <= n; start += hop) {
    for (std::size_t m = 0; m < segment_length; ++m) segment[m] = x[start + m] * window[m];
    power_bins(segment, bins, power);
    for (std::size_t k = 0; k < bins; ++k) accum[k] += power[k];
    ++segments;
  }
  if (segments == 0) throw Error(ErrorCode::InvalidSegmentation, "no complete segment");

  const double rate = signal.sampling_rate_hz();
  const double scale = 1.0 / (static_cast<double>(segments) * rate * window_energy);
  // Interior bins carry the mirrored negative-frequency power; Nyquist (even length) does not.
  const std::size_t last_doubled = (segment_length % 2 == 0) ? bins - 2 : bins - 1;

  PowerSpectrum psd;
  psd.kind = SpectrumKind::PowerDensity;
  psd.frequencies_hz.resize(bins);
  psd.values.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    double v = accum[k] * scale;
    if (k >= 1 && k <= last_doubled) v *= 2.0;
    psd.values[k] = v;
    psd.frequencies_hz[k] = static_cast<double>(k) * rate / static_cast<double>(segment_length);
  }
  return psd;
}

PowerSpectrum welch_psd(const Signal& signal, const WelchConfig& config) {
  const std::size_t seg = config.resolved_segment_length(signal.size());
  if (seg < 2) throw Error(ErrorCode::InvalidSegmentation, "segment length must be at least 2");
  const auto window = hann_window(seg);
  return welch_psd(signal, seg, config.overlap_fraction, window);
}

PowerSpectrum spectral_density(const PowerSpectrum& psd) {
  if (psd.kind != SpectrumKind::PowerDensity) {
    throw Error(ErrorCode::InvalidKind, "spectral density expects a power density");
  }
  PowerSpectrum out;
  out.kind = SpectrumKind::AmplitudeDensity;
  out.frequencies_hz = psd.frequencies_hz;
  out.values.resize(psd.values.size());
  for (std::size_t i = 0; i < psd.values.size(); ++i) {
    if (!(psd.values[i] >= 0.0)) {
      throw Error(ErrorCode::InvalidInput, "negative or NaN power at bin " + std::to_string(i));
    }
    out.values[i] = std::sqrt(psd.values[i]);
  }
  return out;
}

std::vector<double> resample_linear(std::span<const double> source_freqs,
                                    std::span<const double> source_values,
                                    std::span<const double> target_freqs) {
  if (source_freqs.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "resampling needs at least 2 source points");
  }
  if (source_freqs.size() != source_values.size()) {
    throw Error(ErrorCode::InvalidArgument, "source frequency and value lengths differ");
  }
  for (std::size_t i = 1; i < source_freqs.size(); ++i) {
    if (!(source_freqs[i] > source_freqs[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "source frequencies must be strictly ascending");
    }
  }
  const double lo = source_freqs.front();
  const double hi = source_freqs.back();
  std::vector<double> out(target_freqs.size());
  for (std::size_t t = 0; t < target_freqs.size(); ++t) {
    const double f = target_freqs[t];
    if (!(f >= lo && f <= hi)) {
      throw Error(ErrorCode::OutOfRange, "target frequency " + std::to_string(f) +
                                             " Hz outside [" + std::to_string(lo) + ", " +
                                             std::to_string(hi) + "] Hz");
    }
    const auto upper = std::upper_bound(source_freqs.begin(), source_freqs.end(), f);
    const auto i = static_cast<std::size_t>(upper - source_freqs.begin()) - 1;
    if (source_freqs[i] == f) {
      out[t] = source_values[i];
      continue;
    }
    const double x0 = source_freqs[i];
    const double x1 = source_freqs[i + 1];
    const double y0 = source_values[i];
    const double y1 = source_values[i + 1];
    out[t] = y0 + (y1 - y0) * (f - x0) / (x1 - x0);
  }
  return out;
}

}  // namespace filterscope
