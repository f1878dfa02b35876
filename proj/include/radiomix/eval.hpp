// radiomix/eval.hpp

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
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "radiomix/labels.hpp"

namespace radiomix {

struct ClassCounts {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  ClassCounts& operator+=(const ClassCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
};

inline double precision_of(const ClassCounts& c) {
  return c.tp + c.fp == 0 ? 0.0 : double(c.tp) / double(c.tp + c.fp);
}
inline double recall_of(const ClassCounts& c) {
  return c.tp + c.fn == 0 ? 0.0 : double(c.tp) / double(c.tp + c.fn);
}
inline double f_measure_of(const ClassCounts& c) {
  const double p = precision_of(c);
  const double r = recall_of(c);
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

struct SegmentMetrics {
  ClassCounts music;
  ClassCounts speech;
  double segment_s = 0.010;

  ClassCounts overall() const {
    ClassCounts total = music;
    total += speech;
    return total;
  }
  double f_overall() const { return f_measure_of(overall()); }
};

namespace detail {

// Marks segments [i*s, (i+1)*s) intersected by any event of the class. The
// candidate range is padded and each index re-checked with the exact
// predicate, so results match naive per-segment iteration bit for bit.
inline std::vector<std::uint8_t> active_segments(const EventList& events,
                                                 ClassLabel label,
                                                 std::size_t n_segments,
                                                 double segment_s) {
  std::vector<std::uint8_t> active(n_segments, 0);
  for (const Event& e : events.events_of(label)) {
    const auto lo = static_cast<std::size_t>(
        std::max(0.0, std::floor(e.onset_s / segment_s) - 2.0));
    const double hi_d = std::min(static_cast<double>(n_segments),
                                 std::ceil(e.offset_s / segment_s) + 2.0);
    for (std::size_t i = lo; i < static_cast<std::size_t>(hi_d); ++i) {
      if (e.onset_s < (i + 1) * segment_s && e.offset_s > i * segment_s) {
        active[i] = 1;
      }
    }
  }
  return active;
}

inline ClassCounts count_class(const EventList& reference,
                               const EventList& prediction, ClassLabel label,
                               std::size_t n_segments, double segment_s) {
  const auto ref = active_segments(reference, label, n_segments, segment_s);
  const auto pred = active_segments(prediction, label, n_segments, segment_s);
  ClassCounts c;
  for (std::size_t i = 0; i < n_segments; ++i) {
    c.tp += ref[i] & pred[i];
    c.fp += static_cast<std::int64_t>(!ref[i] & pred[i]);
    c.fn += static_cast<std::int64_t>(ref[i] & !pred[i]);
  }
  return c;
}

}  // namespace detail

// Segment-based comparison on a fixed 10 ms grid: a segment is active for a
// class iff any event of that class intersects it; TP/FP/FN per segment per
// class, overall = micro-average of the two classes.
inline SegmentMetrics segment_metrics(const EventList& reference,
                                      const EventList& prediction,
                                      double duration_s,
                                      double segment_s = 0.010) {
  if (!(duration_s > 0.0)) throw Error("segment_metrics: duration must be positive");
  if (!(segment_s > 0.0)) throw Error("segment_metrics: segment size must be positive");
  const auto n_segments =
      static_cast<std::size_t>(std::ceil(duration_s / segment_s - 1e-9));
  SegmentMetrics m;
  m.segment_s = segment_s;
  m.music = detail::count_class(reference, prediction, ClassLabel::music,
                                n_segments, segment_s);
  m.speech = detail::count_class(reference, prediction, ClassLabel::speech,
                                 n_segments, segment_s);
  return m;
}

struct RunReport {
  SegmentMetrics totals;                       // counts summed across files
  std::vector<std::string> stems;              // evaluated file stems
  std::map<std::string, SegmentMetrics> per_file;
};

// Evaluates every matching TSV stem in ref_dir against pred_dir. Counts are
// accumulated across files before ratios are taken (micro-average). A stem
// present on one side only is an error.
inline RunReport evaluate_run(const std::filesystem::path& ref_dir,
                              const std::filesystem::path& pred_dir,
                              double segment_s = 0.010) {
  namespace fs = std::filesystem;
  const auto stems_of = [](const fs::path& dir) {
    if (!fs::is_directory(dir)) {
      throw Error("not a directory: " + dir.string());
    }
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".tsv") {
        stems.push_back(entry.path().stem().string());
      }
    }
    std::sort(stems.begin(), stems.end());
    return stems;
  };

  const std::vector<std::string> ref_stems = stems_of(ref_dir);
  const std::vector<std::string> pred_stems = stems_of(pred_dir);
  std::vector<std::string> missing;
  std::set_difference(ref_stems.begin(), ref_stems.end(), pred_stems.begin(),
                      pred_stems.end(), std::back_inserter(missing));
  std::set_difference(pred_stems.begin(), pred_stems.end(), ref_stems.begin(),
                      ref_stems.end(), std::back_inserter(missing));
  if (!missing.empty()) {
    std::string msg = "unmatched annotation stems:";
    for (const auto& s : missing) msg += " " + s;
    throw Error(msg);
  }
  if (ref_stems.empty()) throw Error("no .tsv files in " + ref_dir.string());

  RunReport report;
  report.totals.segment_s = segment_s;
  report.stems = ref_stems;
  for (const std::string& stem : ref_stems) {
    const EventList ref = read_annotations(ref_dir / (stem + ".tsv"));
    const EventList pred = read_annotations(pred_dir / (stem + ".tsv"));
    const double duration =
        std::max({ref.max_offset(), pred.max_offset(), segment_s});
    const SegmentMetrics m = segment_metrics(ref, pred, duration, segment_s);
    report.per_file[stem] = m;
    report.totals.music += m.music;
    report.totals.speech += m.speech;
  }
  return report;
}

// Macro-average of the two class F-measures, exposed for comparison with the
// default micro-averaged overall.
inline double f_overall_macro(const SegmentMetrics& m) {
  return 0.5 * (f_measure_of(m.music) + f_measure_of(m.speech));
}

}  // namespace radiomix
