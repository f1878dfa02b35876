// tools/radiomix.cpp

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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radiomix/corpus.hpp"
#include "radiomix/eval.hpp"
#include "radiomix/features.hpp"
#include "radiomix/labels.hpp"
#include "radiomix/loudness.hpp"
#include "radiomix/matrix.hpp"
#include "radiomix/postproc.hpp"
#include "radiomix/synth.hpp"

namespace fs = std::filesystem;
using namespace radiomix;

namespace {

constexpr const char* kVersion = "radiomix 0.1.0";

int cmd_index(const std::string& corpus_dir) {
  const CorpusIndex index = index_corpus(corpus_dir);
  for (const ClassLabel cls :
       {ClassLabel::music, ClassLabel::speech, ClassLabel::noise}) {
    double total_s = 0.0;
    for (const CorpusFile& f : index.files(cls)) total_s += f.duration_s;
    std::printf("%-7s %6zu files  %10.1f s\n", to_string(cls),
                index.files(cls).size(), total_s);
  }
  return 0;
}

int cmd_loudness(const std::string& file) {
  const AudioClip clip = decode_and_standardize(file);
  std::printf("%.2f\n", integrated_loudness(clip));
  return 0;
}

int cmd_synth(const std::string& corpus_dir, const std::string& out_dir,
              const VariantConfig& cfg, std::size_t count, std::uint64_t seed,
              unsigned workers) {
  const CorpusIndex index = index_corpus(corpus_dir);
  const DatasetSummary summary =
      generate_dataset(index, cfg, count, seed, out_dir, workers);
  std::printf("wrote %zu examples, manifest %s\n", summary.count,
              summary.manifest_path.string().c_str());
  return 0;
}

int cmd_featurize(const std::string& in, const std::string& out_dir,
                  const std::string& mel_variant) {
  MelConfig cfg;
  if (mel_variant == "slaney") {
    cfg.variant = MelVariant::slaney;
  } else if (mel_variant != "htk") {
    throw Error("unknown mel variant: " + mel_variant + " (htk|slaney)");
  }
  std::vector<fs::path> inputs;
  if (fs::is_directory(in)) {
    for (const auto& entry : fs::recursive_directory_iterator(in)) {
      if (entry.is_regular_file() && entry.path().extension() == ".wav") {
        inputs.push_back(entry.path());
      }
    }
    std::sort(inputs.begin(), inputs.end());
  } else {
    inputs.push_back(in);
  }
  if (inputs.empty()) throw Error("no .wav files under " + in);
  fs::create_directories(out_dir);
  for (const fs::path& path : inputs) {
    const AudioClip clip = decode_and_standardize(path);
    const MatrixF mel = mel_spectrogram(clip, cfg);
    write_melf(fs::path(out_dir) / (path.stem().string() + ".melf"), mel);
  }
  std::printf("featurized %zu file(s) into %s\n", inputs.size(),
              out_dir.c_str());
  return 0;
}

// Window files are "<stem>.w<k>.melf" (stitched at 8 s / 6 s hop); a bare
// "<stem>.melf" is treated as an already-full timeline.
int cmd_postprocess(const std::string& probs_dir, const std::string& out,
                    double threshold, const SmoothingConfig& smoothing,
                    bool no_smooth, std::int64_t total_frames_override) {
  std::map<std::string, std::map<int, fs::path>> groups;
  for (const auto& entry : fs::directory_iterator(probs_dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".melf") continue;
    std::string stem = entry.path().stem().string();
    int window = -1;
    const auto dot = stem.rfind(".w");
    if (dot != std::string::npos) {
      try {
        window = std::stoi(stem.substr(dot + 2));
        stem = stem.substr(0, dot);
      } catch (const std::exception&) {
        window = -1;  // plain stem that happens to contain ".w"
      }
    }
    groups[stem][window] = entry.path();
  }
  if (groups.empty()) throw Error("no .melf files in " + probs_dir);

  const bool out_is_file = groups.size() == 1 && out.size() > 4 &&
                           out.substr(out.size() - 4) == ".tsv";
  if (!out_is_file) fs::create_directories(out);

  for (const auto& [stem, files] : groups) {
    MatrixF probs;
    if (files.size() == 1 && files.begin()->first == -1) {
      probs = read_melf(files.begin()->second);
    } else {
      std::vector<MatrixF> windows;
      for (const auto& [w, path] : files) {
        if (w < 0) throw Error("mixed windowed and plain files for " + stem);
        windows.push_back(read_melf(path));
      }
      const std::size_t frames_per_window = windows[0].rows();
      const std::size_t hop_frames = 600;
      const std::size_t total =
          total_frames_override > 0
              ? static_cast<std::size_t>(total_frames_override)
              : (windows.size() - 1) * hop_frames + frames_per_window;
      probs = stitch_windows(windows, total);
    }
    EventList events = frames_to_events(threshold_probs(probs, threshold));
    if (!no_smooth) events = smooth_events(events, smoothing);
    const fs::path target =
        out_is_file ? fs::path(out) : fs::path(out) / (stem + ".tsv");
    write_annotations(target, events);
  }
  std::printf("post-processed %zu recording(s)\n", groups.size());
  return 0;
}

int cmd_evaluate(const std::string& ref_dir, const std::string& pred_dir,
                 int segment_ms, const std::string& json_path, bool macro) {
  const RunReport report =
      evaluate_run(ref_dir, pred_dir, segment_ms / 1000.0);
  const auto row = [](const char* name, const ClassCounts& c) {
    std::printf("%-8s %9lld %9lld %9lld   %6.4f %6.4f %6.4f\n", name,
                static_cast<long long>(c.tp), static_cast<long long>(c.fp),
                static_cast<long long>(c.fn), precision_of(c), recall_of(c),
                f_measure_of(c));
  };
  std::printf("%-8s %9s %9s %9s   %6s %6s %6s\n", "class", "TP", "FP", "FN",
              "P", "R", "F");
  row("music", report.totals.music);
  row("speech", report.totals.speech);
  row("overall", report.totals.overall());
  if (macro) {
    std::printf("overall F (macro-averaged): %.4f\n",
                f_overall_macro(report.totals));
  }

  if (!json_path.empty()) {
    nlohmann::ordered_json j;
    const auto to_json = [](const ClassCounts& c) {
      return nlohmann::ordered_json{{"tp", c.tp},
                                    {"fp", c.fp},
                                    {"fn", c.fn},
                                    {"precision", precision_of(c)},
                                    {"recall", recall_of(c)},
                                    {"f", f_measure_of(c)}};
    };
    j["segment_ms"] = segment_ms;
    j["files"] = report.stems.size();
    j["music"] = to_json(report.totals.music);
    j["speech"] = to_json(report.totals.speech);
    j["overall"] = to_json(report.totals.overall());
    j["overall_f_macro"] = f_overall_macro(report.totals);
    std::ofstream out(json_path, std::ios::trunc);
    if (!out) throw Error("cannot create " + json_path);
    out << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radiomix: radio-broadcast-style dataset synthesis and "
               "music/speech segmentation evaluation"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "read defaults from a key=value config file");
  app.require_subcommand(1);

  // index
  auto* index_cmd = app.add_subcommand("index", "scan and validate a corpus");
  std::string index_corpus_dir;
  index_cmd->add_option("--corpus", index_corpus_dir, "corpus root directory")
      ->required()
      ->check(CLI::ExistingDirectory);

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "generate a dataset");
  std::string synth_corpus_dir, synth_out_dir, synth_variant = "d-DS";
  std::size_t synth_count = 0;
  std::uint64_t synth_seed = 0;
  unsigned synth_workers = 0;
  VariantConfig vcfg;
  synth_cmd->add_option("--corpus", synth_corpus_dir, "corpus root directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  synth_cmd->add_option("--out", synth_out_dir, "output directory")->required();
  synth_cmd->add_option("--variant", synth_variant,
                        "dataset variant: d-OF|d-OFB|d-NN|d-DS");
  synth_cmd->add_option("--count", synth_count, "number of examples")
      ->required();
  synth_cmd->add_option("--seed", synth_seed, "master seed")->required();
  synth_cmd->add_option("--ld-min", vcfg.ld_min_lu, "minimum loudness difference (LU)");
  synth_cmd->add_option("--ld-max", vcfg.ld_max_lu, "maximum loudness difference (LU)");
  synth_cmd->add_option("--p-transition", vcfg.p_transition,
                        "probability an example contains a transition");
  synth_cmd->add_option("--max-gap", vcfg.max_gap_s,
                        "longest silence gap in a normal transition (s)");
  synth_cmd->add_option("--fade-k", vcfg.fade_exp_k,
                        "sharpness of the exponential fade curves");
  synth_cmd->add_option("--class-weights", vcfg.class_weights,
                        "draw weights for music,speech,noise,speech_over_music");
  synth_cmd->add_option("--workers", synth_workers,
                        "worker threads (0 = all cores)");

  // featurize
  auto* feat_cmd = app.add_subcommand("featurize", "extract log-mel features");
  std::string feat_in, feat_out, feat_variant = "htk";
  feat_cmd->add_option("--in", feat_in, "input WAV file or directory")
      ->required()
      ->check(CLI::ExistingPath);
  feat_cmd->add_option("--out", feat_out, "output directory")->required();
  feat_cmd->add_option("--mel-variant", feat_variant, "mel scale: htk|slaney");

  // loudness
  auto* loud_cmd = app.add_subcommand("loudness", "print integrated loudness");
  std::string loud_file;
  loud_cmd->add_option("file", loud_file, "WAV file")
      ->required()
      ->check(CLI::ExistingFile);

  // postprocess
  auto* post_cmd =
      app.add_subcommand("postprocess", "turn frame probabilities into events");
  std::string post_probs, post_out;
  double post_threshold = 0.5;
  bool post_no_smooth = false;
  std::int64_t post_total_frames = 0;
  SmoothingConfig smoothing;
  post_cmd->add_option("--probs", post_probs, "directory of MELF probability files")
      ->required()
      ->check(CLI::ExistingDirectory);
  post_cmd->add_option("--out", post_out, "output TSV file or directory")
      ->required();
  post_cmd->add_option("--threshold", post_threshold, "activity threshold");
  post_cmd->add_option("--min-speech", smoothing.min_speech_s,
                       "minimum speech event duration (s)");
  post_cmd->add_option("--min-music", smoothing.min_music_s,
                       "minimum music event duration (s)");
  post_cmd->add_option("--max-gap-speech", smoothing.max_gap_speech_s,
                       "largest bridged speech gap (s)");
  post_cmd->add_option("--max-gap-music", smoothing.max_gap_music_s,
                       "largest bridged music gap (s)");
  post_cmd->add_flag("--no-smooth", post_no_smooth,
                     "skip duration/gap smoothing");
  post_cmd->add_option("--total-frames", post_total_frames,
                       "override the stitched timeline length (frames)");

  // evaluate
  auto* eval_cmd =
      app.add_subcommand("evaluate", "segment-based metrics for predictions");
  std::string eval_ref, eval_pred, eval_json;
  int eval_segment_ms = 10;
  bool eval_macro = false;
  eval_cmd->add_option("--ref", eval_ref, "reference annotation directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--pred", eval_pred, "predicted annotation directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--segment-ms", eval_segment_ms, "segment size (ms)");
  eval_cmd->add_option("--json", eval_json, "also write a JSON report here");
  eval_cmd->add_flag("--macro", eval_macro, "print macro-averaged overall F");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (index_cmd->parsed()) return cmd_index(index_corpus_dir);
    if (synth_cmd->parsed()) {
      vcfg.variant = variant_from_string(synth_variant);
      return cmd_synth(synth_corpus_dir, synth_out_dir, vcfg, synth_count,
                       synth_seed, synth_workers);
    }
    if (feat_cmd->parsed()) {
      return cmd_featurize(feat_in, feat_out, feat_variant);
    }
    if (loud_cmd->parsed()) return cmd_loudness(loud_file);
    if (post_cmd->parsed()) {
      return cmd_postprocess(post_probs, post_out, post_threshold, smoothing,
                             post_no_smooth, post_total_frames);
    }
    if (eval_cmd->parsed()) {
      return cmd_evaluate(eval_ref, eval_pred, eval_segment_ms, eval_json,
                          eval_macro);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
