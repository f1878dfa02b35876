// radiomix/synth.hpp

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

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "radiomix/audio.hpp"
#include "radiomix/corpus.hpp"
#include "radiomix/fades.hpp"
#include "radiomix/labels.hpp"
#include "radiomix/loudness.hpp"
#include "radiomix/log.hpp"
#include "radiomix/rng.hpp"
#include "radiomix/wav.hpp"

namespace radiomix {

inline constexpr double kExampleSeconds = 8.0;
inline constexpr std::size_t kExampleSamples = 176400;  // 8 s at 22050 Hz

// Transition placement margins: the transition point stays inside
// [1.5 s, 6.5 s] and the later event keeps at least 1 s of material.
inline constexpr double kTransitionMarginS = 1.5;
inline constexpr double kMinTrailingEventS = 1.0;

enum class Variant { d_of, d_ofb, d_nn, d_ds };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::d_of: return "d-OF";
    case Variant::d_ofb: return "d-OFB";
    case Variant::d_nn: return "d-NN";
    case Variant::d_ds: return "d-DS";
  }
  return "?";
}

inline Variant variant_from_string(const std::string& s) {
  if (s == "d-OF") return Variant::d_of;
  if (s == "d-OFB") return Variant::d_ofb;
  if (s == "d-NN") return Variant::d_nn;
  if (s == "d-DS") return Variant::d_ds;
  throw Error("unknown variant: " + s + " (expected d-OF|d-OFB|d-NN|d-DS)");
}

// What one segment of an example contains.
enum class SegmentState { music = 0, speech = 1, noise = 2, speech_over_music = 3 };

inline const char* to_string(SegmentState s) {
  switch (s) {
    case SegmentState::music: return "music";
    case SegmentState::speech: return "speech";
    case SegmentState::noise: return "noise";
    case SegmentState::speech_over_music: return "speech_over_music";
  }
  return "?";
}

enum class TransitionKind { normal = 0, crossfade = 1 };

inline const char* to_string(TransitionKind k) {
  return k == TransitionKind::normal ? "normal" : "crossfade";
}

struct TransitionSpec {
  TransitionKind kind = TransitionKind::normal;
  // Normal: where the outgoing event ends (the silence gap starts here).
  // Crossfade: midpoint of the overlap.
  double t_transition_s = 4.0;
  FadeSpec fade_out;
  FadeSpec fade_in;
  double gap_s = 0.0;  // normal only
};

struct VariantConfig {
  Variant variant = Variant::d_ds;
  double ld_min_lu = 7.0;
  double ld_max_lu = 18.0;
  double p_transition = 0.5;
  double max_gap_s = 2.0;
  double fade_exp_k = kDefaultFadeExpK;
  // Relative draw weights for {music, speech, noise, speech_over_music}.
  std::array<double, 4> class_weights{1.0, 1.0, 1.0, 1.0};

  bool allows_beds() const { return variant != Variant::d_of; }
  bool allows_transitions() const {
    return variant == Variant::d_nn || variant == Variant::d_ds;
  }
  bool normalizes_bed_loudness() const { return variant != Variant::d_nn; }
};

struct SegmentPlan {
  SegmentState state = SegmentState::music;
  std::optional<double> ld_lu;          // loudness-normalized beds
  std::optional<double> bed_peak_gain;  // d-NN beds
};

struct ExamplePlan {
  std::vector<SegmentPlan> segments;  // one, or two joined by the transition
  std::optional<TransitionSpec> transition;

  bool has_bed() const {
    for (const SegmentPlan& s : segments) {
      if (s.state == SegmentState::speech_over_music) return true;
    }
    return false;
  }
};

namespace detail {

inline SegmentState draw_state(const VariantConfig& cfg, Rng& rng) {
  const int n_states = cfg.allows_beds() ? 4 : 3;
  double total = 0.0;
  for (int i = 0; i < n_states; ++i) total += cfg.class_weights[i];
  if (total <= 0.0) throw Error("class weights sum to zero");
  double r = rng.uniform() * total;
  for (int i = 0; i < n_states; ++i) {
    r -= cfg.class_weights[i];
    if (r < 0.0) return static_cast<SegmentState>(i);
  }
  return static_cast<SegmentState>(n_states - 1);
}

inline FadeCurve draw_curve(Rng& rng) {
  return static_cast<FadeCurve>(rng.uniform_index(kNumFadeCurves));
}

inline void fill_bed_params(const VariantConfig& cfg, SegmentPlan& seg, Rng& rng) {
  if (seg.state != SegmentState::speech_over_music) return;
  if (cfg.normalizes_bed_loudness()) {
    seg.ld_lu = rng.uniform(cfg.ld_min_lu, cfg.ld_max_lu);
  } else {
    seg.bed_peak_gain = rng.uniform(0.1, 1.0);
  }
}

}  // namespace detail

// Draws every random decision of one example: segment states, whether a
// transition happens (p = 0.5 where the variant permits), its kind, point,
// fade curves/durations, gap, and bed parameters. Draw order is fixed, so a
// seed pins the plan.
inline ExamplePlan choose_example_plan(const VariantConfig& cfg, Rng& rng) {
  ExamplePlan plan;
  const bool with_transition =
      cfg.allows_transitions() && rng.bernoulli(cfg.p_transition);

  if (!with_transition) {
    SegmentPlan seg;
    seg.state = detail::draw_state(cfg, rng);
    detail::fill_bed_params(cfg, seg, rng);
    plan.segments.push_back(seg);
    return plan;
  }

  SegmentPlan a, b;
  a.state = detail::draw_state(cfg, rng);  // same-state pairs are fine
  b.state = detail::draw_state(cfg, rng);

  TransitionSpec spec;
  spec.kind = static_cast<TransitionKind>(rng.uniform_index(2));
  spec.t_transition_s =
      rng.uniform(kTransitionMarginS, kExampleSeconds - kTransitionMarginS);
  spec.fade_out.direction = FadeDirection::out;
  spec.fade_in.direction = FadeDirection::in;
  spec.fade_out.exp_k = cfg.fade_exp_k;
  spec.fade_in.exp_k = cfg.fade_exp_k;
  spec.fade_out.curve = detail::draw_curve(rng);
  spec.fade_in.curve = detail::draw_curve(rng);

  if (spec.kind == TransitionKind::normal) {
    const double t = spec.t_transition_s;
    spec.fade_out.duration_s = rng.uniform(0.0, t);
    const double max_gap =
        std::min(cfg.max_gap_s, kExampleSeconds - t - kMinTrailingEventS);
    spec.gap_s = rng.uniform(0.0, std::max(0.0, max_gap));
    spec.fade_in.duration_s =
        rng.uniform(0.0, kExampleSeconds - t - spec.gap_s);
  } else {
    const double t = spec.t_transition_s;
    const double max_overlap = 2.0 * std::min(t, kExampleSeconds - t);
    const double overlap = rng.uniform(0.0, max_overlap);
    spec.fade_out.duration_s = overlap;  // crossfade fades share one duration
    spec.fade_in.duration_s = overlap;
    spec.gap_s = 0.0;
  }

  detail::fill_bed_params(cfg, a, rng);
  detail::fill_bed_params(cfg, b, rng);
  plan.segments = {a, b};
  plan.transition = spec;
  return plan;
}

// Gain envelopes the two sides of a transition run under, over n samples.
// Fade grids follow apply_fade: N = round(d*rate) samples on t = i/(N-1), so
// a faded-out side lands on exactly 0 and a faded-in side starts at exactly 0.
inline std::pair<std::vector<float>, std::vector<float>> transition_envelopes(
    const TransitionSpec& spec, std::size_t n = kExampleSamples,
    int rate = kCanonicalRate) {
  std::vector<float> env_a(n, 1.0f);
  std::vector<float> env_b(n, 1.0f);
  const double total_s = static_cast<double>(n) / rate;

  const auto fade_samples = [&](const FadeSpec& f) {
    return seconds_to_samples(f.duration_s, rate);
  };

  if (spec.kind == TransitionKind::normal) {
    const std::size_t cut_a = seconds_to_samples(spec.t_transition_s, rate);
    const std::size_t n_out = fade_samples(spec.fade_out);
    const std::size_t start_b =
        seconds_to_samples(spec.t_transition_s + spec.gap_s, rate);
    const std::size_t n_in = fade_samples(spec.fade_in);
    if (cut_a > n || n_out > cut_a || start_b + n_in > n) {
      throw Error("transition extents exceed the example length");
    }
    for (std::size_t i = cut_a; i < n; ++i) env_a[i] = 0.0f;
    if (n_out >= 2) {
      const double denom = double(n_out - 1);
      for (std::size_t j = 0; j < n_out; ++j) {
        env_a[cut_a - n_out + j] = static_cast<float>(fade_gain(
            spec.fade_out.curve, 1.0 - j / denom, spec.fade_out.exp_k));
      }
    }
    for (std::size_t i = 0; i < std::min(start_b, n); ++i) env_b[i] = 0.0f;
    if (n_in >= 2) {
      const double denom = double(n_in - 1);
      for (std::size_t j = 0; j < n_in; ++j) {
        env_b[start_b + j] = static_cast<float>(
            fade_gain(spec.fade_in.curve, j / denom, spec.fade_in.exp_k));
      }
    }
  } else {
    const std::size_t n_x = fade_samples(spec.fade_out);
    const double region_start_s = spec.t_transition_s - spec.fade_out.duration_s / 2.0;
    if (region_start_s < -1e-9 ||
        spec.t_transition_s + spec.fade_out.duration_s / 2.0 > total_s + 1e-9) {
      throw Error("transition extents exceed the example length");
    }
    std::size_t start =
        std::min(n, seconds_to_samples(std::max(0.0, region_start_s), rate));
    if (n_x >= 2 && n_x <= n) {
      start = std::min(start, n - n_x);  // absorb the rounding off-by-one
      const double denom = double(n_x - 1);
      for (std::size_t j = 0; j < n_x; ++j) {
        env_a[start + j] = static_cast<float>(fade_gain(
            spec.fade_out.curve, 1.0 - j / denom, spec.fade_out.exp_k));
        env_b[start + j] = static_cast<float>(
            fade_gain(spec.fade_in.curve, j / denom, spec.fade_in.exp_k));
      }
      for (std::size_t i = start + n_x; i < n; ++i) env_a[i] = 0.0f;
      for (std::size_t i = 0; i < start; ++i) env_b[i] = 0.0f;
    } else {
      // Degenerate overlap: butt splice at the transition point.
      const std::size_t cut =
          std::min(n, seconds_to_samples(spec.t_transition_s, rate));
      for (std::size_t i = cut; i < n; ++i) env_a[i] = 0.0f;
      for (std::size_t i = 0; i < cut; ++i) env_b[i] = 0.0f;
    }
  }
  return {std::move(env_a), std::move(env_b)};
}

// Renders a transition from two clips with at least 8 s of material. The
// result is the raw envelope-weighted sum; callers peak-normalize.
inline AudioClip render_transition(const AudioClip& a, const AudioClip& b,
                                   const TransitionSpec& spec) {
  if (a.samples.size() < kExampleSamples || b.samples.size() < kExampleSamples) {
    throw Error("render_transition: both sides need 8 s of material");
  }
  const auto [env_a, env_b] = transition_envelopes(spec);
  AudioClip out;
  out.sample_rate = kCanonicalRate;
  out.samples.resize(kExampleSamples);
  for (std::size_t i = 0; i < kExampleSamples; ++i) {
    out.samples[i] = a.samples[i] * env_a[i] + b.samples[i] * env_b[i];
  }
  return out;
}

// Speech with a loudness-ducked music bed: the bed is scaled so that
// speech loudness minus bed loudness equals ld LU, then the stems are summed.
inline AudioClip render_ducked_bed(const AudioClip& speech,
                                   const AudioClip& music, double ld_lu) {
  if (speech.samples.size() != music.samples.size()) {
    throw Error("render_ducked_bed: stems must have equal length");
  }
  const double gain = gain_for_target_ld(speech, music, ld_lu);
  AudioClip out;
  out.sample_rate = speech.sample_rate;
  out.samples.resize(speech.samples.size());
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    out.samples[i] =
        speech.samples[i] + static_cast<float>(gain) * music.samples[i];
  }
  return out;
}

// One stem of a rendered example: a source signal, the class it contributes,
// and the gain envelope it was mixed under. Events are derived from envelope
// support, so labels always agree with what is audible.
struct Stem {
  ClassLabel cls = ClassLabel::music;
  std::string source;
  std::vector<float> samples;   // includes any ducking gain
  std::vector<float> envelope;  // transition envelope, 1.0 elsewhere
};

struct SynthExample {
  AudioClip audio;
  EventList events;
  Variant variant = Variant::d_ds;
  std::uint64_t master_seed = 0;
  std::uint64_t index = 0;
  ExamplePlan plan;
  std::vector<std::string> sources;
  std::vector<Stem> stems;
};

namespace detail {

// Support of each annotatable stem becomes an event; same-class overlaps
// merge in the EventList.
inline EventList events_from_stems(const std::vector<Stem>& stems,
                                   int rate = kCanonicalRate) {
  std::vector<Event> events;
  for (const Stem& stem : stems) {
    if (stem.cls == ClassLabel::noise) continue;
    std::size_t first = stem.envelope.size();
    std::size_t last = 0;
    for (std::size_t i = 0; i < stem.envelope.size(); ++i) {
      if (stem.envelope[i] > 0.0f) {
        first = std::min(first, i);
        last = i;
      }
    }
    if (first == stem.envelope.size()) continue;  // fully silent stem
    events.push_back({static_cast<double>(first) / rate,
                      static_cast<double>(last + 1) / rate, stem.cls});
  }
  return EventList(std::move(events));
}

struct RetryDraw : Error {
  using Error::Error;
};

// One standardized, peak-normalized 8 s segment from a random corpus file.
inline AudioClip draw_segment(const CorpusIndex& corpus, ClassLabel cls,
                              Rng& rng) {
  const auto& files = corpus.files(cls);
  const CorpusFile& file = files[rng.uniform_index(files.size())];
  try {
    AudioClip clip = decode_and_standardize(file.path);
    clip = trim_silence(clip);
    clip = ensure_min_duration(clip, kExampleSeconds);
    AudioClip segment = random_segment(clip, kExampleSeconds, rng);
    return peak_normalize(std::move(segment));
  } catch (const Error& e) {
    throw RetryDraw(std::string(e.what()) + " [" + file.path.string() + "]");
  }
}

inline AudioClip draw_segment_with_retry(const CorpusIndex& corpus,
                                         ClassLabel cls, Rng& rng,
                                         int attempts = 10) {
  for (int i = 0; i < attempts; ++i) {
    try {
      return draw_segment(corpus, cls, rng);
    } catch (const RetryDraw& e) {
      log::debug(std::string("redrawing segment: ") + e.what());
    }
  }
  throw Error("gave up drawing a usable " + std::string(to_string(cls)) +
              " segment after 10 attempts");
}

// Stems for one side of the example, before any transition envelope.
inline std::vector<Stem> build_side(const CorpusIndex& corpus,
                                    const SegmentPlan& seg, Rng& rng,
                                    int attempts = 10) {
  const auto main_class = [&] {
    switch (seg.state) {
      case SegmentState::music: return ClassLabel::music;
      case SegmentState::speech:
      case SegmentState::speech_over_music: return ClassLabel::speech;
      case SegmentState::noise: return ClassLabel::noise;
    }
    return ClassLabel::music;
  }();

  for (int i = 0; i < attempts; ++i) {
    AudioClip main = draw_segment_with_retry(corpus, main_class, rng);
    if (seg.state != SegmentState::speech_over_music) {
      Stem stem;
      stem.cls = main_class;
      stem.source = main.source_id;
      stem.samples = std::move(main.samples);
      stem.envelope.assign(kExampleSamples, 1.0f);
      return {std::move(stem)};
    }

    AudioClip bed = draw_segment_with_retry(corpus, ClassLabel::music, rng);
    double bed_gain;
    if (seg.bed_peak_gain) {
      bed_gain = *seg.bed_peak_gain;
    } else {
      try {
        bed_gain = gain_for_target_ld(main, bed, seg.ld_lu.value());
      } catch (const Error& e) {
        log::debug(std::string("redrawing bed pair: ") + e.what());
        continue;  // unmeasurable stem; redraw both
      }
    }
    Stem speech_stem;
    speech_stem.cls = ClassLabel::speech;
    speech_stem.source = main.source_id;
    speech_stem.samples = std::move(main.samples);
    speech_stem.envelope.assign(kExampleSamples, 1.0f);

    Stem bed_stem;
    bed_stem.cls = ClassLabel::music;
    bed_stem.source = bed.source_id;
    bed_stem.samples.resize(kExampleSamples);
    for (std::size_t k = 0; k < kExampleSamples; ++k) {
      bed_stem.samples[k] = static_cast<float>(bed_gain) * bed.samples[k];
    }
    bed_stem.envelope.assign(kExampleSamples, 1.0f);
    return {std::move(speech_stem), std::move(bed_stem)};
  }
  throw Error("gave up building a measurable ducked bed after 10 attempts");
}

}  // namespace detail

// Renders the example index under (cfg, master_seed). Fully deterministic:
// the per-example stream is derive(master_seed, index) and every draw,
// including retries, comes from it in a fixed order.
inline SynthExample synthesize_example(const CorpusIndex& corpus,
                                       const VariantConfig& cfg,
                                       std::uint64_t index,
                                       std::uint64_t master_seed) {
  Rng rng(master_seed, index);
  const ExamplePlan plan = choose_example_plan(cfg, rng);

  for (int attempt = 0; attempt < 10; ++attempt) {
    std::vector<Stem> stems;
    if (!plan.transition) {
      stems = detail::build_side(corpus, plan.segments[0], rng);
    } else {
      std::vector<Stem> side_a =
          detail::build_side(corpus, plan.segments[0], rng);
      std::vector<Stem> side_b =
          detail::build_side(corpus, plan.segments[1], rng);
      const auto [env_a, env_b] = transition_envelopes(*plan.transition);
      for (Stem& s : side_a) s.envelope = env_a;
      for (Stem& s : side_b) s.envelope = env_b;
      stems = std::move(side_a);
      for (Stem& s : side_b) stems.push_back(std::move(s));
    }

    AudioClip mix;
    mix.sample_rate = kCanonicalRate;
    mix.samples.assign(kExampleSamples, 0.0f);
    for (const Stem& stem : stems) {
      for (std::size_t i = 0; i < kExampleSamples; ++i) {
        mix.samples[i] += stem.samples[i] * stem.envelope[i];
      }
    }
    if (peak_abs(mix) == 0.0f) {
      log::debug("rendered example is digital silence; retrying");
      continue;
    }

    SynthExample out;
    out.audio = peak_normalize(std::move(mix));
    out.events = detail::events_from_stems(stems);
    out.variant = cfg.variant;
    out.master_seed = master_seed;
    out.index = index;
    out.plan = plan;
    for (const Stem& s : stems) out.sources.push_back(s.source);
    out.stems = std::move(stems);
    return out;
  }
  throw Error("failed to synthesize example " + std::to_string(index) +
              " after 10 attempts");
}

namespace detail {

inline nlohmann::ordered_json manifest_line(const SynthExample& ex) {
  nlohmann::ordered_json j;
  j["index"] = ex.index;
  j["variant"] = to_string(ex.variant);
  j["seed"] = ex.master_seed;
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const SegmentPlan& s : ex.plan.segments) classes.push_back(to_string(s.state));
  j["classes"] = classes;
  if (ex.plan.transition) {
    const TransitionSpec& t = *ex.plan.transition;
    nlohmann::ordered_json jt;
    jt["kind"] = to_string(t.kind);
    jt["t"] = t.t_transition_s;
    jt["fade_out"] = {{"curve", to_string(t.fade_out.curve)},
                      {"duration", t.fade_out.duration_s}};
    jt["fade_in"] = {{"curve", to_string(t.fade_in.curve)},
                     {"duration", t.fade_in.duration_s}};
    if (t.kind == TransitionKind::normal) jt["gap"] = t.gap_s;
    j["transition"] = jt;
  } else {
    j["transition"] = nullptr;
  }
  std::vector<double> lds;
  for (const SegmentPlan& s : ex.plan.segments) {
    if (s.ld_lu) lds.push_back(*s.ld_lu);
  }
  if (lds.empty()) {
    j["ld"] = nullptr;
  } else if (lds.size() == 1) {
    j["ld"] = lds[0];
  } else {
    j["ld"] = lds;
  }
  j["sources"] = ex.sources;
  return j;
}

inline std::string example_stem(std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "ex_%06llu",
                static_cast<unsigned long long>(index));
  return buf;
}

}  // namespace detail

struct DatasetSummary {
  std::filesystem::path manifest_path;
  std::size_t count = 0;
};

// Writes count WAV+TSV pairs and one manifest (JSON lines; first line echoes
// the resolved config). Examples are independent, so workers split the index
// range freely; same (cfg, seed, count) reproduces every byte.
inline DatasetSummary generate_dataset(const CorpusIndex& corpus,
                                       const VariantConfig& cfg,
                                       std::size_t count,
                                       std::uint64_t master_seed,
                                       const std::filesystem::path& out_dir,
                                       unsigned workers = 0) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(count, 1));

  std::vector<std::string> manifest_lines(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mu;

  const auto run = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) break;
      try {
        const SynthExample ex = synthesize_example(corpus, cfg, i, master_seed);
        const std::string stem = detail::example_stem(i);
        write_wav16(out_dir / (stem + ".wav"), ex.audio.samples, kCanonicalRate);
        write_annotations(out_dir / (stem + ".tsv"), ex.events);
        manifest_lines[i] = detail::manifest_line(ex).dump();
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (first_error.empty()) first_error = e.what();
        failed.store(true);
        break;
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (std::thread& t : pool) t.join();
  if (failed.load()) {
    throw Error("dataset generation aborted (partial output in " +
                out_dir.string() + "): " + first_error);
  }

  nlohmann::ordered_json header;
  header["config"] = {{"variant", to_string(cfg.variant)},
                      {"count", count},
                      {"seed", master_seed},
                      {"ld_min", cfg.ld_min_lu},
                      {"ld_max", cfg.ld_max_lu},
                      {"p_transition", cfg.p_transition},
                      {"max_gap_s", cfg.max_gap_s},
                      {"fade_exp_k", cfg.fade_exp_k}};

  const fs::path manifest_path = out_dir / "manifest.jsonl";
  const fs::path tmp = manifest_path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot create manifest: " + tmp.string());
    out << header.dump() << "\n";
    for (const std::string& line : manifest_lines) out << line << "\n";
    if (!out) throw Error("manifest write failed: " + tmp.string());
  }
  fs::rename(tmp, manifest_path);
  return {manifest_path, count};
}

}  // namespace radiomix
