// radiomix/labels.hpp

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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "radiomix/audio.hpp"
#include "radiomix/corpus.hpp"
#include "radiomix/matrix.hpp"

namespace radiomix {

inline constexpr double kFrameHopS = 0.010;

// One annotated span. Offsets are exclusive, so adjacent events tile.
struct Event {
  double onset_s = 0.0;
  double offset_s = 0.0;
  ClassLabel label = ClassLabel::music;

  bool operator==(const Event&) const = default;
};

// Time-ordered annotations over {music, speech}. Construction normalizes:
// events sorted by (onset, label) and same-label events that overlap or touch
// are merged. Different labels overlap freely.
class EventList {
 public:
  EventList() = default;

  explicit EventList(std::vector<Event> events) {
    for (const Event& e : events) {
      if (e.label == ClassLabel::noise) {
        throw Error("EventList: noise is not an annotatable class");
      }
      if (!(e.onset_s < e.offset_s)) {
        throw Error("EventList: event onset must precede offset");
      }
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
      if (a.onset_s != b.onset_s) return a.onset_s < b.onset_s;
      return static_cast<int>(a.label) < static_cast<int>(b.label);
    });
    // With events onset-sorted, the most recent event of a label is also the
    // one with the furthest offset, so merging only needs that one.
    std::ptrdiff_t last_of[2] = {-1, -1};
    for (const Event& e : events) {
      const int li = e.label == ClassLabel::music ? 0 : 1;
      Event* open = last_of[li] >= 0 ? &events_[last_of[li]] : nullptr;
      if (open != nullptr && e.onset_s <= open->offset_s) {
        open->offset_s = std::max(open->offset_s, e.offset_s);
      } else {
        last_of[li] = static_cast<std::ptrdiff_t>(events_.size());
        events_.push_back(e);
      }
    }
  }

  const std::vector<Event>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  std::size_t size() const { return events_.size(); }

  std::vector<Event> events_of(ClassLabel label) const {
    std::vector<Event> out;
    for (const Event& e : events_) {
      if (e.label == label) out.push_back(e);
    }
    return out;
  }

  double max_offset() const {
    double m = 0.0;
    for (const Event& e : events_) m = std::max(m, e.offset_s);
    return m;
  }

  bool operator==(const EventList&) const = default;

 private:
  std::vector<Event> events_;
};

// Per-frame binary activity, columns (music, speech). A frame is active for
// a label iff its center (i + 0.5) * hop falls inside an event of that label.
inline MatrixU8 events_to_frames(const EventList& events, std::size_t n_frames,
                                 double hop_s = kFrameHopS) {
  const double timeline = n_frames * hop_s;
  for (const Event& e : events.events()) {
    if (e.offset_s > timeline + 1e-9) {
      throw Error("events_to_frames: event extends past the timeline");
    }
  }
  MatrixU8 frames(n_frames, 2);
  for (const Event& e : events.events()) {
    const std::size_t col = e.label == ClassLabel::music ? 0 : 1;
    // Scan a window padded by 2 frames around the event and apply the exact
    // center predicate inside it.
    const auto lo = static_cast<std::size_t>(
        std::max(0.0, std::floor(e.onset_s / hop_s) - 2.0));
    const auto hi = std::min<double>(static_cast<double>(n_frames),
                                     std::ceil(e.offset_s / hop_s) + 2.0);
    for (std::size_t i = lo; i < static_cast<std::size_t>(hi); ++i) {
      const double center = (i + 0.5) * hop_s;
      if (center >= e.onset_s && center < e.offset_s) frames.at(i, col) = 1;
    }
  }
  return frames;
}

// Maximal runs of active frames become events [start*hop, end*hop).
inline EventList frames_to_events(const MatrixU8& frames,
                                  double hop_s = kFrameHopS) {
  if (frames.cols() != 2) throw Error("frames_to_events: expected 2 columns");
  std::vector<Event> events;
  for (std::size_t col = 0; col < 2; ++col) {
    const ClassLabel label = col == 0 ? ClassLabel::music : ClassLabel::speech;
    std::size_t run_start = 0;
    bool in_run = false;
    for (std::size_t i = 0; i <= frames.rows(); ++i) {
      const bool active = i < frames.rows() && frames.at(i, col) != 0;
      if (active && !in_run) {
        run_start = i;
        in_run = true;
      } else if (!active && in_run) {
        events.push_back({run_start * hop_s, i * hop_s, label});
        in_run = false;
      }
    }
  }
  return EventList(std::move(events));
}

// TSV annotation format: onset<TAB>offset<TAB>label, seconds with 3 decimals.
inline void write_annotations(const std::filesystem::path& path,
                              const EventList& events) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot create file: " + tmp.string());
    char line[128];
    for (const Event& e : events.events()) {
      std::snprintf(line, sizeof(line), "%.3f\t%.3f\t%s\n", e.onset_s,
                    e.offset_s, to_string(e.label));
      out << line;
    }
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Tolerates extra whitespace and '#' header lines. Malformed content reports
// its line number. Overlapping same-label events merge per EventList rules.
inline EventList read_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path.string());
  std::vector<Event> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string onset, offset, label;
    if (!(ss >> onset)) continue;  // blank line
    if (onset[0] == '#') continue;
    if (!(ss >> offset >> label)) {
      throw Error("malformed annotation at " + path.string() + ":" +
                  std::to_string(line_no));
    }
    Event e;
    try {
      e.onset_s = std::stod(onset);
      e.offset_s = std::stod(offset);
    } catch (const std::exception&) {
      throw Error("malformed time value at " + path.string() + ":" +
                  std::to_string(line_no));
    }
    if (label != "music" && label != "speech") {
      throw Error("unknown label '" + label + "' at " + path.string() + ":" +
                  std::to_string(line_no));
    }
    e.label = class_label_from_string(label);
    if (!(e.onset_s < e.offset_s)) {
      throw Error("empty or inverted event at " + path.string() + ":" +
                  std::to_string(line_no));
    }
    events.push_back(e);
  }
  return EventList(std::move(events));
}

}  // namespace radiomix
