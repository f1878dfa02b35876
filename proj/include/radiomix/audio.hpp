// radiomix/audio.hpp

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
#include <stdexcept>
#include <string>
#include <vector>

namespace radiomix {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Every signal in the pipeline is mono at this rate.
inline constexpr int kCanonicalRate = 22050;

inline double db_to_linear(double db) { return std::pow(10.0, db / 20.0); }
inline double linear_to_db(double lin) { return 20.0 * std::log10(lin); }

struct AudioClip {
  std::vector<float> samples;
  int sample_rate = kCanonicalRate;
  std::string source_id;

  std::size_t size() const { return samples.size(); }
  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
};

inline float peak_abs(const AudioClip& clip) {
  float peak = 0.0f;
  for (float s : clip.samples) peak = std::max(peak, std::abs(s));
  return peak;
}

// Scales so max |sample| == 1.0. The peak sample maps to exactly +/-1.0
// (x / x == 1 in IEEE arithmetic), so a second application is a no-op.
inline AudioClip peak_normalize(AudioClip clip) {
  const float peak = peak_abs(clip);
  if (peak == 0.0f) throw Error("peak_normalize: all-zero clip");
  if (peak != 1.0f) {
    for (float& s : clip.samples) s /= peak;
  }
  return clip;
}

inline std::size_t seconds_to_samples(double seconds, int rate = kCanonicalRate) {
  return static_cast<std::size_t>(std::llround(seconds * rate));
}

}  // namespace radiomix
