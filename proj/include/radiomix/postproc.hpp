// radiomix/postproc.hpp

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

#include <vector>

#include "radiomix/labels.hpp"
#include "radiomix/matrix.hpp"

namespace radiomix {

// Event-level smoothing thresholds: minimum event durations and the largest
// silence still bridged between same-class events.
struct SmoothingConfig {
  double min_speech_s = 1.3;
  double min_music_s = 3.4;
  double max_gap_speech_s = 0.4;
  double max_gap_music_s = 0.6;
};

// Reassembles per-window predictions (8 s windows at a 6 s hop) into one
// full-timeline matrix. Interior windows keep their middle 6 s; the first
// window also keeps its opening second and the last window its tail, so the
// first and last seconds of the recording stay covered even though those
// window edges are otherwise discarded.
inline MatrixF stitch_windows(const std::vector<MatrixF>& windows,
                              std::size_t total_frames, double window_s = 8.0,
                              double hop_s = 6.0, double edge_s = 1.0,
                              double frame_hop_s = kFrameHopS) {
  if (windows.empty()) throw Error("stitch_windows: no windows");
  const std::size_t cols = windows[0].cols();
  const std::size_t frames_per_window = windows[0].rows();
  for (const MatrixF& w : windows) {
    if (w.rows() != frames_per_window || w.cols() != cols) {
      throw Error("stitch_windows: inconsistent window shapes");
    }
  }
  const auto hop_frames =
      static_cast<std::size_t>(std::llround(hop_s / frame_hop_s));
  const auto edge_frames =
      static_cast<std::size_t>(std::llround(edge_s / frame_hop_s));
  (void)window_s;

  const std::size_t n_windows = windows.size();
  const std::size_t last_start = (n_windows - 1) * hop_frames;
  if (last_start >= total_frames ||
      last_start + frames_per_window < total_frames) {
    throw Error("stitch_windows: window count inconsistent with recording length");
  }

  MatrixF out(total_frames, cols);
  for (std::size_t t = 0; t < total_frames; ++t) {
    // Owner: the window whose retained core covers t; clamped so the first
    // and last windows also own the outer edges.
    std::size_t w = t < edge_frames
                        ? 0
                        : std::min((t - edge_frames) / hop_frames, n_windows - 1);
    const std::size_t local = t - w * hop_frames;
    for (std::size_t c = 0; c < cols; ++c) {
      out.at(t, c) = windows[w].at(local, c);
    }
  }
  return out;
}

// prob >= threshold counts as active.
inline MatrixU8 threshold_probs(const MatrixF& probs, double threshold = 0.5) {
  MatrixU8 labels(probs.rows(), probs.cols());
  for (std::size_t i = 0; i < probs.data().size(); ++i) {
    labels.data()[i] = probs.data()[i] >= threshold ? 1 : 0;
  }
  return labels;
}

// Per class: bridge gaps <= max_gap first, then drop events shorter than the
// class minimum. Merge-before-remove rescues fragmented genuine events.
inline EventList smooth_events(const EventList& events,
                               const SmoothingConfig& cfg = SmoothingConfig{}) {
  std::vector<Event> out;
  for (const ClassLabel label : {ClassLabel::music, ClassLabel::speech}) {
    const double max_gap = label == ClassLabel::music ? cfg.max_gap_music_s
                                                      : cfg.max_gap_speech_s;
    const double min_dur =
        label == ClassLabel::music ? cfg.min_music_s : cfg.min_speech_s;

    std::vector<Event> merged;
    for (const Event& e : events.events_of(label)) {
      if (!merged.empty() && e.onset_s - merged.back().offset_s <= max_gap) {
        merged.back().offset_s = std::max(merged.back().offset_s, e.offset_s);
      } else {
        merged.push_back(e);
      }
    }
    for (const Event& e : merged) {
      if (e.offset_s - e.onset_s >= min_dur) out.push_back(e);
    }
  }
  return EventList(std::move(out));
}

}  // namespace radiomix
