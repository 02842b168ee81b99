#pragma once

// Test-only reference computations. They share no code with the library:
// long double arithmetic, angles evaluated directly, no reduction tricks.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

namespace oracle {

/// |sum_n x[n] e^{-2 pi i j n / L}| for j = 0 .. bins-1.
inline std::vector<double> dft_magnitudes(const std::vector<double>& x, std::size_t bins) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const auto L = static_cast<long double>(x.size());
  std::vector<double> out(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    long double re = 0.0L, im = 0.0L;
    for (std::size_t n = 0; n < x.size(); ++n) {
      const long double angle = two_pi * static_cast<long double>(j) * static_cast<long double>(n) / L;
      re += static_cast<long double>(x[n]) * std::cos(angle);
      im -= static_cast<long double>(x[n]) * std::sin(angle);
    }
    out[j] = static_cast<double>(std::sqrt(re * re + im * im));
  }
  return out;
}

/// Welch PSD with a periodic Hann window, density scaling, one-sided.
inline std::vector<double> welch(const std::vector<double>& x, double rate, std::size_t seg, double overlap) {
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  std::vector<long double> w(seg);
  long double energy = 0.0L;
  for (std::size_t n = 0; n < seg; ++n) {
    w[n] = 0.5L * (1.0L - std::cos(two_pi * static_cast<long double>(n) / static_cast<long double>(seg)));
    energy += w[n] * w[n];
  }
  const auto hop = static_cast<std::size_t>(std::floor(static_cast<double>(seg) * (1.0 - overlap)));
  const std::size_t bins = seg / 2 + 1;
  std::vector<long double> acc(bins, 0.0L);
  std::size_t count = 0;
  for (std::size_t start = 0; start + seg <= x.size(); start += hop) {
    for (std::size_t k = 0; k < bins; ++k) {
      long double re = 0.0L, im = 0.0L;
      for (std::size_t n = 0; n < seg; ++n) {
        const long double v = static_cast<long double>(x[start + n]) * w[n];
        const long double angle = two_pi * static_cast<long double>(k) * static_cast<long double>(n) /
                                  static_cast<long double>(seg);
        re += v * std::cos(angle);
        im -= v * std::sin(angle);
      }
      acc[k] += re * re + im * im;
    }
    ++count;
  }
  std::vector<double> out(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    long double v = acc[k] / (static_cast<long double>(count) * rate * energy);
    const bool nyquist = seg % 2 == 0 && k == seg / 2;
    if (k != 0 && !nyquist) v *= 2.0L;
    out[k] = static_cast<double>(v);
  }
  return out;
}

inline long double mean(const std::vector<long double>& v) {
  long double s = 0.0L;
  for (auto x : v) s += x;
  return s / static_cast<long double>(v.size());
}

inline long double pop_std(const std::vector<long double>& v) {
  const long double m = mean(v);
  long double s = 0.0L;
  for (auto x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<long double>(v.size()));
}

struct Bcv {
  std::vector<double> between, within, ratio;
};

/// Naive BCV from per-epoch signals grouped by class (population std).
inline Bcv bcv(const std::vector<std::vector<std::vector<double>>>& epochs_by_class, double rate, std::size_t seg,
               double overlap) {
  const std::size_t classes = epochs_by_class.size();
  std::vector<std::vector<std::vector<double>>> dens(classes);
  for (std::size_t c = 0; c < classes; ++c) {
    for (const auto& e : epochs_by_class[c]) {
      auto psd = welch(e, rate, seg, overlap);
      for (auto& p : psd) p = std::sqrt(p);
      dens[c].push_back(psd);
    }
  }
  const std::size_t bins = dens[0][0].size();
  Bcv out;
  for (std::size_t k = 0; k < bins; ++k) {
    std::vector<long double> means, stds;
    for (std::size_t c = 0; c < classes; ++c) {
      std::vector<long double> col;
      for (const auto& d : dens[c]) col.push_back(d[k]);
      means.push_back(mean(col));
      stds.push_back(pop_std(col));
    }
    const long double b = pop_std(means);
    const long double w = mean(stds);
    out.between.push_back(static_cast<double>(b));
    out.within.push_back(static_cast<double>(w));
    out.ratio.push_back(static_cast<double>(b / w));
  }
  return out;
}

}  // namespace oracle
