// radiomix/loudness.hpp

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

namespace radiomix {

// ITU-R BS.1770-4 integrated loudness for mono signals. The standard
// tabulates filter coefficients for 48 kHz only; both K-weighting stages are
// re-derived here for any rate by a prewarped bilinear transform of the
// analog prototypes (Mansbridge, Finn & Reiss, AES 132nd convention). At
// 48 kHz this reproduces the published table to ~1e-10.

struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;  // numerator
  double a1 = 0.0, a2 = 0.0;            // denominator, a0 == 1

  // Magnitude response at frequency f (Hz) for sample rate fs.
  double magnitude_at(double f, double fs) const {
    const std::complex<double> z =
        std::exp(std::complex<double>(0.0, -2.0 * M_PI * f / fs));
    const std::complex<double> num = b0 + b1 * z + b2 * z * z;
    const std::complex<double> den = 1.0 + a1 * z + a2 * z * z;
    return std::abs(num / den);
  }
};

// Stage 1: high-shelf pre-filter modelling the acoustic effect of the head.
inline Biquad k_weight_shelf(double fs) {
  const double db = 3.999843853973347;
  const double f0 = 1681.974450955533;
  const double q = 0.7071752369554196;

  const double k = std::tan(M_PI * f0 / fs);
  const double vh = std::pow(10.0, db / 20.0);
  const double vb = std::pow(vh, 0.4996667741545416);
  const double a0 = 1.0 + k / q + k * k;

  Biquad s;
  s.b0 = (vh + vb * k / q + k * k) / a0;
  s.b1 = 2.0 * (k * k - vh) / a0;
  s.b2 = (vh - vb * k / q + k * k) / a0;
  s.a1 = 2.0 * (k * k - 1.0) / a0;
  s.a2 = (1.0 - k / q + k * k) / a0;
  return s;
}

// Stage 2: RLB high-pass.
inline Biquad k_weight_highpass(double fs) {
  const double f0 = 38.13547087602444;
  const double q = 0.5003270373238773;

  const double k = std::tan(M_PI * f0 / fs);
  const double a0 = 1.0 + k / q + k * k;

  Biquad s;
  s.b0 = 1.0;
  s.b1 = -2.0;
  s.b2 = 1.0;
  s.a1 = 2.0 * (k * k - 1.0) / a0;
  s.a2 = (1.0 - k / q + k * k) / a0;
  return s;
}

namespace detail {

inline void biquad_in_place(std::vector<double>& x, const Biquad& c) {
  // Direct form II transposed, zero initial state.
  double z1 = 0.0, z2 = 0.0;
  for (double& v : x) {
    const double in = v;
    const double out = c.b0 * in + z1;
    z1 = c.b1 * in - c.a1 * out + z2;
    z2 = c.b2 * in - c.a2 * out;
    v = out;
  }
}

}  // namespace detail

// Applies the two-stage K-weighting cascade.
inline AudioClip k_weight(const AudioClip& clip) {
  std::vector<double> x(clip.samples.begin(), clip.samples.end());
  detail::biquad_in_place(x, k_weight_shelf(clip.sample_rate));
  detail::biquad_in_place(x, k_weight_highpass(clip.sample_rate));
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.source_id = clip.source_id;
  out.samples.assign(x.begin(), x.end());
  return out;
}

inline constexpr double kAbsoluteGateLufs = -70.0;
inline constexpr double kRelativeGateLu = 10.0;
inline constexpr double kLoudnessOffset = -0.691;

// Gated integrated loudness in LUFS: mean square of the K-weighted signal
// over 400 ms blocks at 75% overlap, absolute gate at -70 LUFS, relative
// gate 10 LU below the absolute-gated mean. Throws when the clip is shorter
// than one block or no block passes the absolute gate.
inline double integrated_loudness(const AudioClip& clip) {
  const int fs = clip.sample_rate;
  const std::size_t block = static_cast<std::size_t>(std::llround(0.400 * fs));
  const std::size_t hop = static_cast<std::size_t>(std::llround(0.100 * fs));
  if (clip.samples.size() < block) {
    throw Error("integrated_loudness: clip shorter than 400 ms");
  }

  std::vector<double> x(clip.samples.begin(), clip.samples.end());
  detail::biquad_in_place(x, k_weight_shelf(fs));
  detail::biquad_in_place(x, k_weight_highpass(fs));

  // Mean square per gating block, via a running prefix of squares.
  std::vector<double> prefix(x.size() + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    prefix[i + 1] = prefix[i] + x[i] * x[i];
  }
  const std::size_t n_blocks = (x.size() - block) / hop + 1;
  std::vector<double> block_ms(n_blocks);
  for (std::size_t j = 0; j < n_blocks; ++j) {
    const std::size_t begin = j * hop;
    block_ms[j] = (prefix[begin + block] - prefix[begin]) / double(block);
  }

  const auto block_loudness = [](double ms) {
    return kLoudnessOffset + 10.0 * std::log10(ms);
  };

  double abs_sum = 0.0;
  std::size_t abs_count = 0;
  for (double ms : block_ms) {
    if (ms > 0.0 && block_loudness(ms) > kAbsoluteGateLufs) {
      abs_sum += ms;
      ++abs_count;
    }
  }
  if (abs_count == 0) {
    throw Error("integrated_loudness: unmeasurable (no block above the absolute gate)");
  }

  const double relative_gate =
      block_loudness(abs_sum / double(abs_count)) - kRelativeGateLu;
  double sum = 0.0;
  std::size_t count = 0;
  for (double ms : block_ms) {
    if (ms <= 0.0) continue;
    const double l = block_loudness(ms);
    if (l > kAbsoluteGateLufs && l > relative_gate) {
      sum += ms;
      ++count;
    }
  }
  return block_loudness(sum / double(count));
}

// Linear gain that, applied to `music`, puts its loudness target_ld LU below
// the loudness of `speech`. When durations differ, both measurements use the
// overlapping region only.
inline double gain_for_target_ld(const AudioClip& speech,
                                 const AudioClip& music, double target_ld) {
  const std::size_t overlap = std::min(speech.samples.size(), music.samples.size());
  const auto head = [overlap](const AudioClip& clip) {
    if (clip.samples.size() == overlap) return clip;
    AudioClip out;
    out.sample_rate = clip.sample_rate;
    out.source_id = clip.source_id;
    out.samples.assign(clip.samples.begin(), clip.samples.begin() + overlap);
    return out;
  };
  const double l_speech = integrated_loudness(head(speech));
  const double l_music = integrated_loudness(head(music));
  return db_to_linear(l_speech - l_music - target_ld);
}

}  // namespace radiomix
