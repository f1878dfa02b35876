// radiomix/corpus.hpp

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

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "radiomix/audio.hpp"
#include "radiomix/log.hpp"
#include "radiomix/resample.hpp"
#include "radiomix/rng.hpp"
#include "radiomix/wav.hpp"

namespace radiomix {

enum class ClassLabel { music = 0, speech = 1, noise = 2 };

inline const char* to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::music: return "music";
    case ClassLabel::speech: return "speech";
    case ClassLabel::noise: return "noise";
  }
  return "?";
}

inline ClassLabel class_label_from_string(const std::string& s) {
  if (s == "music") return ClassLabel::music;
  if (s == "speech") return ClassLabel::speech;
  if (s == "noise") return ClassLabel::noise;
  throw Error("unknown class label: " + s);
}

// Decode + downmix + resample to the canonical mono 22050 Hz format.
// Already-canonical input passes through sample for sample.
inline AudioClip decode_and_standardize(const std::filesystem::path& path) {
  const WavData wav = read_wav(path);
  AudioClip clip;
  clip.source_id = path.string();
  clip.sample_rate = kCanonicalRate;

  std::vector<float> mono;
  if (wav.channels == 1) {
    mono = wav.samples;
  } else {
    mono.resize(wav.frames());
    for (std::size_t i = 0; i < mono.size(); ++i) {
      mono[i] = 0.5f * (wav.samples[2 * i] + wav.samples[2 * i + 1]);
    }
  }
  clip.samples = resample(mono, wav.sample_rate, kCanonicalRate);
  if (clip.samples.empty()) throw Error("decoded no samples: " + path.string());
  return clip;
}

// Drops leading/trailing sub-threshold audio and caps interior silences.
// Silence detection is framewise RMS over 50 ms blocks; retained samples
// keep their original order.
inline AudioClip trim_silence(AudioClip clip, double threshold_db = -50.0,
                              double max_internal_silence_s = 0.5) {
  if (clip.samples.empty()) throw Error("trim_silence: empty clip");
  const std::size_t frame = seconds_to_samples(0.050, clip.sample_rate);
  const double threshold = db_to_linear(threshold_db);

  const std::size_t n_frames = (clip.samples.size() + frame - 1) / frame;
  std::vector<bool> silent(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    const std::size_t begin = f * frame;
    const std::size_t end = std::min(begin + frame, clip.samples.size());
    double energy = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      energy += double(clip.samples[i]) * clip.samples[i];
    }
    const double rms = std::sqrt(energy / double(end - begin));
    silent[f] = rms < threshold;
  }

  std::size_t first = 0;
  while (first < n_frames && silent[first]) ++first;
  if (first == n_frames) throw Error("trim_silence: no signal content");
  std::size_t last = n_frames - 1;
  while (silent[last]) --last;

  const std::size_t max_silent_frames = static_cast<std::size_t>(
      max_internal_silence_s / 0.050 + 1e-9);

  std::vector<float> kept;
  kept.reserve(clip.samples.size());
  std::size_t run = 0;
  for (std::size_t f = first; f <= last; ++f) {
    run = silent[f] ? run + 1 : 0;
    if (silent[f] && run > max_silent_frames) continue;
    const std::size_t begin = f * frame;
    const std::size_t end = std::min(begin + frame, clip.samples.size());
    kept.insert(kept.end(), clip.samples.begin() + begin,
                clip.samples.begin() + end);
  }
  clip.samples = std::move(kept);
  return clip;
}

// Loops a short clip onto itself, whole copies, until it reaches min_s.
inline AudioClip ensure_min_duration(AudioClip clip, double min_s = 8.0) {
  if (clip.samples.empty()) throw Error("ensure_min_duration: empty clip");
  const std::size_t target = seconds_to_samples(min_s, clip.sample_rate);
  const std::size_t original = clip.samples.size();
  if (original >= target) return clip;
  const std::size_t copies = (target + original - 1) / original;
  std::vector<float> extended;
  extended.reserve(copies * original);
  for (std::size_t c = 0; c < copies; ++c) {
    extended.insert(extended.end(), clip.samples.begin(), clip.samples.end());
  }
  clip.samples = std::move(extended);
  return clip;
}

// Contiguous random slice of exactly round(dur_s * rate) samples.
inline AudioClip random_segment(const AudioClip& clip, double dur_s, Rng& rng) {
  const std::size_t want = seconds_to_samples(dur_s, clip.sample_rate);
  if (want == 0) throw Error("random_segment: zero duration");
  if (clip.samples.size() < want) {
    throw Error("random_segment: clip shorter than requested duration");
  }
  const std::size_t slack = clip.samples.size() - want;
  const auto offset = static_cast<std::size_t>(rng.uniform_index(slack + 1));
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.source_id = clip.source_id;
  out.samples.assign(clip.samples.begin() + offset,
                     clip.samples.begin() + offset + want);
  return out;
}

struct CorpusFile {
  std::filesystem::path path;
  double duration_s = 0.0;  // after standardization
};

struct CorpusIndex {
  std::array<std::vector<CorpusFile>, 3> by_class;

  const std::vector<CorpusFile>& files(ClassLabel label) const {
    return by_class[static_cast<std::size_t>(label)];
  }
  std::vector<CorpusFile>& files(ClassLabel label) {
    return by_class[static_cast<std::size_t>(label)];
  }
};

inline std::map<ClassLabel, std::string> default_corpus_layout() {
  return {{ClassLabel::music, "music"},
          {ClassLabel::speech, "speech"},
          {ClassLabel::noise, "noise"}};
}

// Walks <root>/<class-subdir>/** for .wav files (case-insensitive), decodes
// each once to verify it and cache its standardized duration. Undecodable
// files are logged and skipped; an empty class is fatal.
inline CorpusIndex index_corpus(
    const std::filesystem::path& root,
    const std::map<ClassLabel, std::string>& layout = default_corpus_layout()) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) {
    throw Error("corpus root is not a directory: " + root.string());
  }

  CorpusIndex index;
  for (const auto& [label, subdir] : layout) {
    const fs::path dir = root / subdir;
    if (!fs::is_directory(dir)) {
      throw Error("missing class directory '" + subdir +
                  "' under corpus root " + root.string());
    }
    std::vector<fs::path> paths;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      std::string ext = entry.path().extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (ext == ".wav") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());  // stable draw order across runs

    for (const auto& path : paths) {
      try {
        const AudioClip clip = decode_and_standardize(path);
        index.files(label).push_back({path, clip.duration_s()});
      } catch (const Error& e) {
        log::warn(std::string("skipping undecodable file: ") + e.what());
      }
    }
    if (index.files(label).empty()) {
      throw Error("corpus class '" + std::string(to_string(label)) +
                  "' has no decodable files under " + dir.string());
    }
  }
  return index;
}

}  // namespace radiomix
