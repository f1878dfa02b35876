// tests/test_eval.cpp

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

#include <catch_amalgamated.hpp>

#include <cmath>

#include "radiomix/eval.hpp"
#include "support/fixtures.hpp"

using namespace radiomix;

namespace {

// Naive per-segment iteration; the ground truth the fast path must equal.
SegmentMetrics naive_metrics(const EventList& ref, const EventList& pred,
                             double duration_s, double segment_s = 0.010) {
  const auto n = static_cast<std::size_t>(
      std::ceil(duration_s / segment_s - 1e-9));
  SegmentMetrics m;
  m.segment_s = segment_s;
  for (const ClassLabel label : {ClassLabel::music, ClassLabel::speech}) {
    ClassCounts& c = label == ClassLabel::music ? m.music : m.speech;
    for (std::size_t i = 0; i < n; ++i) {
      const auto active = [&](const EventList& list) {
        for (const Event& e : list.events_of(label)) {
          if (e.onset_s < (i + 1) * segment_s && e.offset_s > i * segment_s) {
            return true;
          }
        }
        return false;
      };
      const bool r = active(ref);
      const bool p = active(pred);
      c.tp += r && p;
      c.fp += !r && p;
      c.fn += r && !p;
    }
  }
  return m;
}

EventList random_events(Rng& rng, double span_s, int max_events) {
  std::vector<Event> events;
  const int n = 1 + static_cast<int>(rng.uniform_index(max_events));
  for (int i = 0; i < n; ++i) {
    const double a = rng.uniform(0.0, span_s - 0.02);
    const double b = a + rng.uniform(0.005, span_s - a);
    events.push_back({a, b,
                      rng.bernoulli(0.5) ? ClassLabel::music : ClassLabel::speech});
  }
  return EventList(std::move(events));
}

bool counts_equal(const SegmentMetrics& a, const SegmentMetrics& b) {
  return a.music.tp == b.music.tp && a.music.fp == b.music.fp &&
         a.music.fn == b.music.fn && a.speech.tp == b.speech.tp &&
         a.speech.fp == b.speech.fp && a.speech.fn == b.speech.fn;
}

}  // namespace

TEST_CASE("perfect prediction scores 1.0 everywhere") {
  const EventList events({{0.5, 3.0, ClassLabel::music},
                          {2.0, 6.0, ClassLabel::speech}});
  const SegmentMetrics m = segment_metrics(events, events, 8.0);
  REQUIRE(precision_of(m.music) == 1.0);
  REQUIRE(recall_of(m.music) == 1.0);
  REQUIRE(f_measure_of(m.music) == 1.0);
  REQUIRE(f_measure_of(m.speech) == 1.0);
  REQUIRE(m.f_overall() == 1.0);
}

TEST_CASE("empty prediction yields zero recall and the zero conventions") {
  const EventList ref({{0.0, 2.0, ClassLabel::speech}});
  const SegmentMetrics m = segment_metrics(ref, EventList{}, 4.0);
  REQUIRE(recall_of(m.speech) == 0.0);
  REQUIRE(precision_of(m.speech) == 0.0);  // 0/0 convention
  REQUIRE(f_measure_of(m.speech) == 0.0);
}

TEST_CASE("half-overlapping events split the counts 50/50") {
  const EventList ref({{0.0, 1.0, ClassLabel::music}});
  const EventList pred({{0.5, 1.5, ClassLabel::music}});
  const SegmentMetrics m = segment_metrics(ref, pred, 2.0);
  REQUIRE(m.music.tp == 50);
  REQUIRE(m.music.fp == 50);
  REQUIRE(m.music.fn == 50);
  REQUIRE(precision_of(m.music) == 0.5);
  REQUIRE(recall_of(m.music) == 0.5);
  REQUIRE(f_measure_of(m.music) == 0.5);
  REQUIRE(counts_equal(m, naive_metrics(ref, pred, 2.0)));
}

TEST_CASE("fast counting equals naive iteration on random pairs") {
  Rng rng(404);
  for (int trial = 0; trial < 300; ++trial) {
    const double duration = rng.uniform(0.5, 10.0);
    const EventList ref = random_events(rng, duration, 6);
    const EventList pred = random_events(rng, duration, 6);
    REQUIRE(counts_equal(segment_metrics(ref, pred, duration),
                         naive_metrics(ref, pred, duration)));
  }
}

TEST_CASE("swapping reference and prediction swaps precision and recall") {
  Rng rng(405);
  for (int trial = 0; trial < 100; ++trial) {
    const double duration = rng.uniform(1.0, 10.0);
    const EventList a = random_events(rng, duration, 5);
    const EventList b = random_events(rng, duration, 5);
    const SegmentMetrics ab = segment_metrics(a, b, duration);
    const SegmentMetrics ba = segment_metrics(b, a, duration);
    const std::pair<const ClassCounts*, const ClassCounts*> pairs[] = {
        {&ab.music, &ba.music}, {&ab.speech, &ba.speech}};
    for (const auto& [fwd, rev] : pairs) {
      REQUIRE(precision_of(*fwd) == recall_of(*rev));
      REQUIRE(recall_of(*fwd) == precision_of(*rev));
      REQUIRE(f_measure_of(*fwd) == f_measure_of(*rev));
    }
  }
}

TEST_CASE("splitting an event into abutting halves changes nothing") {
  Rng rng(406);
  for (int trial = 0; trial < 100; ++trial) {
    const double duration = 10.0;
    const EventList pred = random_events(rng, duration, 5);
    const double a = rng.uniform(0.0, 6.0);
    const double b = a + rng.uniform(0.1, 3.0);
    const double mid = rng.uniform(a + 0.01, b - 0.01);

    const EventList whole({{a, b, ClassLabel::music}});
    // Abutting halves stay distinct through evaluation when fed as separate
    // lists of the two opposite labels; same-label halves merge on
    // construction, which must also leave counts unchanged.
    const EventList halves(
        {{a, mid, ClassLabel::music}, {mid, b, ClassLabel::music}});
    REQUIRE(counts_equal(segment_metrics(whole, pred, duration),
                         segment_metrics(halves, pred, duration)));
  }
}

TEST_CASE("spurious predictions cannot raise precision; missed references cannot raise recall") {
  Rng rng(407);
  for (int trial = 0; trial < 100; ++trial) {
    const double duration = 10.0;
    // Keep real activity inside [0, 4.5] so added events in [5, 9.5] are
    // genuinely spurious (no reference overlap) or genuinely missed.
    const EventList ref = random_events(rng, 4.5, 4);
    const EventList pred = random_events(rng, 4.5, 4);
    const SegmentMetrics base = segment_metrics(ref, pred, duration);

    std::vector<Event> spurious = pred.events();
    const double a = rng.uniform(5.0, 8.5);
    spurious.push_back({a, a + rng.uniform(0.05, 1.0), ClassLabel::music});
    const SegmentMetrics more_pred =
        segment_metrics(ref, EventList(spurious), duration);
    REQUIRE(precision_of(more_pred.music) <= precision_of(base.music) + 1e-12);

    std::vector<Event> missed = ref.events();
    const double c = rng.uniform(5.0, 8.5);
    missed.push_back({c, c + rng.uniform(0.05, 1.0), ClassLabel::speech});
    const SegmentMetrics more_ref =
        segment_metrics(EventList(missed), pred, duration);
    REQUIRE(recall_of(more_ref.speech) <= recall_of(base.speech) + 1e-12);
  }
}

TEST_CASE("non-positive durations are rejected") {
  REQUIRE_THROWS_AS(segment_metrics(EventList{}, EventList{}, 0.0), Error);
  REQUIRE_THROWS_AS(segment_metrics(EventList{}, EventList{}, -1.0), Error);
}

TEST_CASE("evaluate_run on identical directories is perfect") {
  fixtures::TempDir tmp("eval_same");
  namespace fs = std::filesystem;
  fs::create_directories(tmp.path / "ref");
  fs::create_directories(tmp.path / "pred");
  for (int i = 0; i < 3; ++i) {
    const EventList events({{0.1 * i, 1.0 + i, ClassLabel::music},
                            {0.5, 2.0 + i, ClassLabel::speech}});
    write_annotations(tmp.path / "ref" / ("f" + std::to_string(i) + ".tsv"),
                      events);
    write_annotations(tmp.path / "pred" / ("f" + std::to_string(i) + ".tsv"),
                      events);
  }
  const RunReport report = evaluate_run(tmp.path / "ref", tmp.path / "pred");
  REQUIRE(report.totals.f_overall() == 1.0);
  REQUIRE(report.stems.size() == 3);
}

TEST_CASE("evaluate_run lists unmatched stems") {
  fixtures::TempDir tmp("eval_missing");
  namespace fs = std::filesystem;
  fs::create_directories(tmp.path / "ref");
  fs::create_directories(tmp.path / "pred");
  const EventList events({{0.0, 1.0, ClassLabel::music}});
  write_annotations(tmp.path / "ref" / "a.tsv", events);
  write_annotations(tmp.path / "ref" / "b.tsv", events);
  write_annotations(tmp.path / "pred" / "a.tsv", events);
  REQUIRE_THROWS_WITH(evaluate_run(tmp.path / "ref", tmp.path / "pred"),
                      Catch::Matchers::ContainsSubstring("b"));
}

TEST_CASE("micro-average sits strictly between a perfect and an empty file") {
  fixtures::TempDir tmp("eval_micro");
  namespace fs = std::filesystem;
  fs::create_directories(tmp.path / "ref");
  fs::create_directories(tmp.path / "pred");
  const EventList events({{0.0, 4.0, ClassLabel::music}});
  write_annotations(tmp.path / "ref" / "good.tsv", events);
  write_annotations(tmp.path / "pred" / "good.tsv", events);
  write_annotations(tmp.path / "ref" / "bad.tsv", events);
  // Prediction for "bad": a tiny event far away, so duration matches but
  // nearly everything is missed.
  write_annotations(tmp.path / "pred" / "bad.tsv",
                    EventList({{3.99, 4.0, ClassLabel::music}}));

  const RunReport report = evaluate_run(tmp.path / "ref", tmp.path / "pred");
  const double f_good = report.per_file.at("good").f_overall();
  const double f_bad = report.per_file.at("bad").f_overall();
  const double f_all = report.totals.f_overall();
  REQUIRE(f_good == 1.0);
  REQUIRE(f_all > f_bad);
  REQUIRE(f_all < f_good);
}

TEST_CASE("aggregate totals equal summed per-file oracle counts") {
  fixtures::TempDir tmp("eval_sum");
  namespace fs = std::filesystem;
  fs::create_directories(tmp.path / "ref");
  fs::create_directories(tmp.path / "pred");
  Rng rng(911);
  ClassCounts expect_music, expect_speech;
  for (int i = 0; i < 3; ++i) {
    const double duration = 6.0 + i;
    EventList ref = random_events(rng, duration, 4);
    EventList pred = random_events(rng, duration, 4);
    // Pin the duration both sides agree on: a shared trailing event.
    std::vector<Event> re = ref.events(), pe = pred.events();
    re.push_back({duration - 0.01, duration, ClassLabel::music});
    pe.push_back({duration - 0.01, duration, ClassLabel::music});
    ref = EventList(re);
    pred = EventList(pe);
    const std::string name = "r" + std::to_string(i) + ".tsv";
    write_annotations(tmp.path / "ref" / name, ref);
    write_annotations(tmp.path / "pred" / name, pred);
    const SegmentMetrics m =
        naive_metrics(read_annotations(tmp.path / "ref" / name),
                      read_annotations(tmp.path / "pred" / name), duration);
    expect_music += m.music;
    expect_speech += m.speech;
  }
  const RunReport report = evaluate_run(tmp.path / "ref", tmp.path / "pred");
  REQUIRE(report.totals.music.tp == expect_music.tp);
  REQUIRE(report.totals.music.fp == expect_music.fp);
  REQUIRE(report.totals.music.fn == expect_music.fn);
  REQUIRE(report.totals.speech.tp == expect_speech.tp);
  REQUIRE(report.totals.speech.fp == expect_speech.fp);
  REQUIRE(report.totals.speech.fn == expect_speech.fn);
}
