// radiomix/features.hpp

// Copyright 2026  The radiomix authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "radiomix/audio.hpp"
#include "radiomix/matrix.hpp"

namespace radiomix {

enum class MelVariant { htk, slaney };

struct MelConfig {
  int n_fft = 1024;
  int hop = 220;          // 10 ms at 22050 Hz
  int n_bands = 80;
  double fmin_hz = 64.0;
  double fmax_hz = 8000.0;
  MelVariant variant = MelVariant::htk;
  double power_floor = 1e-10;  // log floor, applied to band energies
};

inline double hz_to_mel(double f, MelVariant variant = MelVariant::htk) {
  if (variant == MelVariant::htk) {
    return 2595.0 * std::log10(1.0 + f / 700.0);
  }
  // Slaney: linear below 1 kHz, logarithmic above.
  const double f_sp = 200.0 / 3.0;
  const double min_log_hz = 1000.0;
  const double logstep = std::log(6.4) / 27.0;
  if (f < min_log_hz) return f / f_sp;
  return min_log_hz / f_sp + std::log(f / min_log_hz) / logstep;
}

inline double mel_to_hz(double m, MelVariant variant = MelVariant::htk) {
  if (variant == MelVariant::htk) {
    return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0);
  }
  const double f_sp = 200.0 / 3.0;
  const double min_log_hz = 1000.0;
  const double min_log_mel = min_log_hz / f_sp;
  const double logstep = std::log(6.4) / 27.0;
  if (m < min_log_mel) return m * f_sp;
  return min_log_hz * std::exp(logstep * (m - min_log_mel));
}

// n_bands + 2 mel-equidistant corner frequencies spanning [fmin, fmax];
// entries 1..n_bands are the triangle centers.
inline std::vector<double> mel_corner_frequencies(const MelConfig& cfg) {
  const double m_lo = hz_to_mel(cfg.fmin_hz, cfg.variant);
  const double m_hi = hz_to_mel(cfg.fmax_hz, cfg.variant);
  std::vector<double> corners(cfg.n_bands + 2);
  for (int k = 0; k < cfg.n_bands + 2; ++k) {
    const double m = m_lo + (m_hi - m_lo) * k / (cfg.n_bands + 1);
    corners[k] = mel_to_hz(m, cfg.variant);
  }
  return corners;
}

inline std::vector<double> mel_center_frequencies(const MelConfig& cfg) {
  const std::vector<double> corners = mel_corner_frequencies(cfg);
  return {corners.begin() + 1, corners.end() - 1};
}

// Triangle response of band m (0-based) at frequency f.
inline double mel_triangle_weight(const std::vector<double>& corners,
                                  std::size_t band, double f) {
  const double left = corners[band];
  const double center = corners[band + 1];
  const double right = corners[band + 2];
  if (f <= left || f >= right) return 0.0;
  if (f <= center) return (f - left) / (center - left);
  return (right - f) / (right - center);
}

// n_bands x (n_fft/2 + 1) triangular filterbank sampled at the FFT bin
// frequencies.
inline MatrixF mel_filterbank(const MelConfig& cfg, int sample_rate) {
  const std::vector<double> corners = mel_corner_frequencies(cfg);
  const std::size_t n_bins = cfg.n_fft / 2 + 1;
  MatrixF fb(cfg.n_bands, n_bins);
  for (std::size_t m = 0; m < static_cast<std::size_t>(cfg.n_bands); ++m) {
    for (std::size_t k = 0; k < n_bins; ++k) {
      const double f = static_cast<double>(k) * sample_rate / cfg.n_fft;
      fb.at(m, k) = static_cast<float>(mel_triangle_weight(corners, m, f));
    }
  }
  return fb;
}

namespace detail {

// Iterative radix-2 Cooley-Tukey; length must be a power of two.
inline void fft_in_place(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw Error("fft: length must be a power of two");
  }
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> step(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= step;
      }
    }
  }
}

// Reflect indexing without edge duplication, folded for short signals.
inline std::size_t reflect_index(std::ptrdiff_t pos, std::size_t len) {
  if (len == 1) return 0;
  const std::ptrdiff_t period = 2 * (static_cast<std::ptrdiff_t>(len) - 1);
  std::ptrdiff_t m = pos % period;
  if (m < 0) m += period;
  return static_cast<std::size_t>(m < static_cast<std::ptrdiff_t>(len)
                                      ? m
                                      : period - m);
}

}  // namespace detail

// Log-energy mel spectrogram: centered STFT (periodic Hann, reflect padding,
// n_frames = 1 + floor(len/hop)), power spectrum through the triangular
// filterbank, natural log with a fixed floor. 8 s at 22050 Hz -> 802 x 80.
inline MatrixF mel_spectrogram(const AudioClip& clip,
                               const MelConfig& cfg = MelConfig{}) {
  if (clip.samples.empty()) throw Error("mel_spectrogram: empty clip");
  if (clip.samples.size() < static_cast<std::size_t>(cfg.hop)) {
    throw Error("mel_spectrogram: clip shorter than one hop");
  }
  const std::size_t len = clip.samples.size();
  const std::size_t n_frames = 1 + len / cfg.hop;
  const std::size_t n_bins = cfg.n_fft / 2 + 1;
  const int pad = cfg.n_fft / 2;

  std::vector<double> window(cfg.n_fft);
  for (int i = 0; i < cfg.n_fft; ++i) {
    window[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / cfg.n_fft));
  }

  const MatrixF fb = mel_filterbank(cfg, clip.sample_rate);
  MatrixF out(n_frames, cfg.n_bands);
  std::vector<std::complex<double>> frame(cfg.n_fft);
  std::vector<double> power(n_bins);

  for (std::size_t t = 0; t < n_frames; ++t) {
    const std::ptrdiff_t start =
        static_cast<std::ptrdiff_t>(t) * cfg.hop - pad;
    for (int i = 0; i < cfg.n_fft; ++i) {
      const std::size_t src = detail::reflect_index(start + i, len);
      frame[i] = {clip.samples[src] * window[i], 0.0};
    }
    detail::fft_in_place(frame);
    for (std::size_t k = 0; k < n_bins; ++k) power[k] = std::norm(frame[k]);

    for (int m = 0; m < cfg.n_bands; ++m) {
      double energy = 0.0;
      for (std::size_t k = 0; k < n_bins; ++k) {
        energy += fb.at(m, k) * power[k];
      }
      out.at(t, m) =
          static_cast<float>(std::log(std::max(energy, cfg.power_floor)));
    }
  }
  return out;
}

}  // namespace radiomix
