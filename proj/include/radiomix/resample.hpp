// radiomix/resample.hpp

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
#include <cstdint>
#include <numeric>
#include <vector>

#include "radiomix/audio.hpp"

namespace radiomix {

namespace detail {

// Zeroth-order modified Bessel function, power series.
inline double bessel_i0(double x) {
  double sum = 1.0;
  double term = 1.0;
  const double half_x = x / 2.0;
  for (int k = 1; k < 64; ++k) {
    term *= (half_x / k) * (half_x / k);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

// Kaiser-windowed sinc lowpass. cutoff is in cycles/sample at the design
// rate; 2*half_taps + 1 coefficients, symmetric around half_taps.
inline std::vector<double> kaiser_sinc_lowpass(double cutoff, int half_taps,
                                               double beta) {
  std::vector<double> h(2 * half_taps + 1);
  const double denom = bessel_i0(beta);
  for (int i = 0; i <= 2 * half_taps; ++i) {
    const double n = i - half_taps;
    const double r = n / half_taps;
    const double window = bessel_i0(beta * std::sqrt(1.0 - r * r)) / denom;
    h[i] = 2.0 * cutoff * sinc(2.0 * cutoff * n) * window;
  }
  return h;
}

}  // namespace detail

// Rational-ratio polyphase resampler: windowed-sinc (Kaiser) prototype with
// ~96 dB stop-band, pass-band up to 0.9x the smaller Nyquist. Equal rates
// pass through untouched.
inline std::vector<float> resample(const std::vector<float>& input, int sr_in,
                                   int sr_out) {
  if (sr_in <= 0 || sr_out <= 0) throw Error("resample: invalid sample rate");
  if (sr_in == sr_out) return input;
  if (input.empty()) return {};

  const int g = std::gcd(sr_in, sr_out);
  const std::int64_t up = sr_out / g;    // L
  const std::int64_t down = sr_in / g;   // M

  // Design at the upsampled rate sr_in * L.
  const double nyq_frac = 0.5 / static_cast<double>(std::max(up, down));
  const double cutoff = 0.95 * nyq_frac;
  const double transition = 0.10 * nyq_frac;  // 2*pi*transition rad
  const double atten_db = 96.0;
  const double beta = 0.1102 * (atten_db - 8.7);
  const int taps_est = static_cast<int>(
      std::ceil((atten_db - 7.95) / (2.285 * 2.0 * M_PI * transition)));
  const int half_taps = std::max(8, (taps_est + 1) / 2);

  const std::vector<double> h =
      detail::kaiser_sinc_lowpass(cutoff, half_taps, beta);
  const std::int64_t center = half_taps;
  const std::int64_t n_taps = static_cast<std::int64_t>(h.size());
  const std::int64_t n_in = static_cast<std::int64_t>(input.size());
  const std::int64_t n_out = (n_in * up + down / 2) / down;

  std::vector<float> out(static_cast<std::size_t>(n_out));
  const double gain = static_cast<double>(up);
  for (std::int64_t j = 0; j < n_out; ++j) {
    // Output j sits at upsampled index j*M; fold in the filter delay and
    // walk the one polyphase branch whose taps hit genuine input samples.
    const std::int64_t r = j * down + center;
    const std::int64_t i0 = r % up;
    const std::int64_t q = (r - i0) / up;
    double acc = 0.0;
    for (std::int64_t i = i0, k = q; i < n_taps; i += up, --k) {
      if (k < 0) break;
      if (k >= n_in) continue;
      acc += h[static_cast<std::size_t>(i)] * input[static_cast<std::size_t>(k)];
    }
    out[static_cast<std::size_t>(j)] = static_cast<float>(gain * acc);
  }
  return out;
}

}  // namespace radiomix
