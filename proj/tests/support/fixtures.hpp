// tests/support/fixtures.hpp

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

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "radiomix/audio.hpp"
#include "radiomix/corpus.hpp"
#include "radiomix/rng.hpp"
#include "radiomix/wav.hpp"

namespace fixtures {

using radiomix::AudioClip;
using radiomix::Rng;

inline std::vector<float> sine(double freq_hz, double dur_s, int rate,
                               double amplitude = 1.0, double phase = 0.0) {
  const auto n = static_cast<std::size_t>(std::llround(dur_s * rate));
  std::vector<float> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<float>(
        amplitude * std::sin(2.0 * M_PI * freq_hz * i / rate + phase));
  }
  return out;
}

inline std::vector<float> white_noise(double dur_s, int rate, Rng& rng,
                                      double amplitude = 1.0) {
  const auto n = static_cast<std::size_t>(std::llround(dur_s * rate));
  std::vector<float> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<float>(amplitude * (2.0 * rng.uniform() - 1.0));
  }
  return out;
}

// Paul Kellet's three-pole pink filter over seeded white noise, then
// peak-scaled. Deterministic for a given seed.
inline std::vector<float> pink_noise(double dur_s, int rate, std::uint64_t seed,
                                     double peak = 1.0) {
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(std::llround(dur_s * rate));
  std::vector<float> out(n);
  double b0 = 0.0, b1 = 0.0, b2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double white = 2.0 * rng.uniform() - 1.0;
    b0 = 0.99765 * b0 + white * 0.0990460;
    b1 = 0.96300 * b1 + white * 0.2965164;
    b2 = 0.57000 * b2 + white * 1.0526913;
    out[i] = static_cast<float>(b0 + b1 + b2 + white * 0.1848);
  }
  float max_abs = 0.0f;
  for (float v : out) max_abs = std::max(max_abs, std::abs(v));
  for (float& v : out) v = static_cast<float>(v / max_abs * peak);
  return out;
}

// Chord of detuned sines with a slow tremolo; steady enough to be measurable.
inline std::vector<float> music_like(double dur_s, int rate, Rng& rng) {
  const auto n = static_cast<std::size_t>(std::llround(dur_s * rate));
  std::vector<float> out(n, 0.0f);
  const int voices = 3 + static_cast<int>(rng.uniform_index(3));
  for (int v = 0; v < voices; ++v) {
    const double f = rng.uniform(80.0, 3000.0);
    const double a = rng.uniform(0.2, 1.0) / voices;
    const double phase = rng.uniform(0.0, 2.0 * M_PI);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] += static_cast<float>(a * std::sin(2.0 * M_PI * f * i / rate + phase));
    }
  }
  const double trem_hz = rng.uniform(0.2, 1.5);
  for (std::size_t i = 0; i < n; ++i) {
    const double trem = 0.8 + 0.2 * std::sin(2.0 * M_PI * trem_hz * i / rate);
    out[i] = static_cast<float>(out[i] * trem);
  }
  float peak = 0.0f;
  for (float v : out) peak = std::max(peak, std::abs(v));
  for (float& v : out) v = v / peak * 0.9f;
  return out;
}

// Syllabic amplitude-modulated noise bursts with short pauses.
inline std::vector<float> speech_like(double dur_s, int rate, Rng& rng) {
  const auto n = static_cast<std::size_t>(std::llround(dur_s * rate));
  std::vector<float> out(n);
  const double syllable_hz = rng.uniform(2.5, 5.0);
  double lp = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double white = 2.0 * rng.uniform() - 1.0;
    lp = 0.97 * lp + 0.03 * white;  // crude spectral tilt
    const double t = static_cast<double>(i) / rate;
    const double syl = std::max(0.0, std::sin(2.0 * M_PI * syllable_hz * t));
    out[i] = static_cast<float>(lp * syl);
  }
  float peak = 0.0f;
  for (float v : out) peak = std::max(peak, std::abs(v));
  for (float& v : out) v = v / peak * 0.9f;
  return out;
}

struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("radiomix_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

// A small deterministic corpus in the directory-per-class layout, mixing
// sample rates and PCM encodings.
inline void make_test_corpus(const std::filesystem::path& root,
                             std::uint64_t seed, int files_per_class = 4) {
  namespace fs = std::filesystem;
  Rng rng(seed);
  fs::create_directories(root / "music");
  fs::create_directories(root / "speech");
  fs::create_directories(root / "noise");

  const int rates[3] = {22050, 44100, 48000};
  for (int i = 0; i < files_per_class; ++i) {
    const int rate = rates[i % 3];
    const double dur = 9.0 + rng.uniform(0.0, 4.0);

    auto m = music_like(dur, rate, rng);
    auto s = speech_like(dur, rate, rng);
    auto nz = white_noise(dur, rate, rng, 0.8);

    const std::string suffix = std::to_string(i) + ".wav";
    if (i % 2 == 0) {
      radiomix::write_wav16(root / "music" / ("m" + suffix), m, rate);
      radiomix::write_wav_float(root / "speech" / ("s" + suffix), s, rate);
      radiomix::write_wav24(root / "noise" / ("n" + suffix), nz, rate);
    } else {
      radiomix::write_wav_float(root / "music" / ("m" + suffix), m, rate);
      radiomix::write_wav16(root / "speech" / ("s" + suffix), s, rate);
      radiomix::write_wav16(root / "noise" / ("n" + suffix), nz, rate);
    }
  }
  // One short music file to exercise looping.
  auto short_clip = music_like(3.0, 22050, rng);
  radiomix::write_wav16(root / "music" / "short.wav", short_clip, 22050);
}

}  // namespace fixtures
