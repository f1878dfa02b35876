// radiomix/fades.hpp

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
#include <string>

#include "radiomix/audio.hpp"

namespace radiomix {

// The four mixing-desk fade shapes. All map [0,1] -> [0,1], hit both
// endpoints exactly, and are non-decreasing.
enum class FadeCurve { linear = 0, exp_convex = 1, exp_concave = 2, s_curve = 3 };

inline constexpr int kNumFadeCurves = 4;

// Sharpness of the exponential pair; larger bends harder.
inline constexpr double kDefaultFadeExpK = 3.0;

inline const char* to_string(FadeCurve curve) {
  switch (curve) {
    case FadeCurve::linear: return "linear";
    case FadeCurve::exp_convex: return "exp_convex";
    case FadeCurve::exp_concave: return "exp_concave";
    case FadeCurve::s_curve: return "s_curve";
  }
  return "?";
}

inline FadeCurve fade_curve_from_string(const std::string& s) {
  if (s == "linear") return FadeCurve::linear;
  if (s == "exp_convex") return FadeCurve::exp_convex;
  if (s == "exp_concave") return FadeCurve::exp_concave;
  if (s == "s_curve") return FadeCurve::s_curve;
  throw Error("unknown fade curve: " + s);
}

// Gain at normalized position t in [0,1].
//   linear       t
//   exp_convex   (e^(kt)-1)/(e^k-1)   slow start, below the diagonal
//   exp_concave  same with -k         fast start, above the diagonal
//   s_curve      raised cosine
inline double fade_gain(FadeCurve curve, double t,
                        double exp_k = kDefaultFadeExpK) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error("fade_gain: t outside [0,1]");
  }
  switch (curve) {
    case FadeCurve::linear:
      return t;
    case FadeCurve::exp_convex:
      return (std::exp(exp_k * t) - 1.0) / (std::exp(exp_k) - 1.0);
    case FadeCurve::exp_concave:
      return (std::exp(-exp_k * t) - 1.0) / (std::exp(-exp_k) - 1.0);
    case FadeCurve::s_curve:
      return 0.5 * (1.0 - std::cos(M_PI * t));
  }
  throw Error("fade_gain: bad curve");
}

enum class FadeDirection { in, out };

struct FadeSpec {
  FadeCurve curve = FadeCurve::linear;
  double duration_s = 0.0;
  FadeDirection direction = FadeDirection::in;
  double exp_k = kDefaultFadeExpK;
};

// A D-second fade covers N = round(D*rate) samples on the grid t_i = i/(N-1),
// so a fade-in starts at exactly 0 gain and a fade-out lands on exactly 0.
// Fades shorter than two samples change nothing.
inline AudioClip apply_fade(AudioClip clip, const FadeSpec& spec) {
  const std::size_t n = seconds_to_samples(spec.duration_s, clip.sample_rate);
  if (n > clip.samples.size()) {
    throw Error("apply_fade: fade longer than clip");
  }
  if (n < 2) return clip;

  const double denom = static_cast<double>(n - 1);
  if (spec.direction == FadeDirection::in) {
    for (std::size_t i = 0; i < n; ++i) {
      clip.samples[i] = static_cast<float>(
          clip.samples[i] * fade_gain(spec.curve, i / denom, spec.exp_k));
    }
  } else {
    const std::size_t base = clip.samples.size() - n;
    for (std::size_t i = 0; i < n; ++i) {
      clip.samples[base + i] = static_cast<float>(
          clip.samples[base + i] *
          fade_gain(spec.curve, 1.0 - i / denom, spec.exp_k));
    }
  }
  return clip;
}

}  // namespace radiomix
