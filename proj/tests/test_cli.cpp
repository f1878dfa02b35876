// tests/test_cli.cpp

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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "radiomix/labels.hpp"
#include "radiomix/matrix.hpp"
#include "radiomix/synth.hpp"
#include "support/fixtures.hpp"

using namespace radiomix;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, const fs::path& capture,
            std::string* output = nullptr) {
  const std::string cmd = std::string(RADIOMIX_BIN) + " " + args + " > " +
                          capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output != nullptr) {
    std::ifstream in(capture);
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WEXITSTATUS(status);
}

std::vector<char> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("version and help always succeed") {
  fixtures::TempDir tmp("cli_basic");
  std::string out;
  REQUIRE(run_cli("--version", tmp.path / "v.txt", &out) == 0);
  REQUIRE(out.find("radiomix") != std::string::npos);
  REQUIRE(run_cli("--help", tmp.path / "h.txt", &out) == 0);
  REQUIRE(out.find("synth") != std::string::npos);
}

TEST_CASE("unknown flags exit 2 with a usage error") {
  fixtures::TempDir tmp("cli_unknown");
  std::string out;
  REQUIRE(run_cli("synth --frobnicate", tmp.path / "u.txt", &out) == 2);
  REQUIRE(out.find("error") != std::string::npos);
}

TEST_CASE("evaluate on a missing directory exits 2 naming the path") {
  fixtures::TempDir tmp("cli_missing");
  fs::create_directories(tmp.path / "ref");
  std::string out;
  const int rc = run_cli("evaluate --ref " + (tmp.path / "ref").string() +
                             " --pred " + (tmp.path / "nope").string(),
                         tmp.path / "e.txt", &out);
  REQUIRE(rc == 2);
  REQUIRE(out.find("nope") != std::string::npos);
}

TEST_CASE("loudness prints a two-decimal reading") {
  fixtures::TempDir tmp("cli_loud");
  write_wav_float(tmp.path / "sine.wav", fixtures::sine(997.0, 8.0, 22050, 1.0),
                  22050);
  std::string out;
  REQUIRE(run_cli("loudness " + (tmp.path / "sine.wav").string(),
                  tmp.path / "l.txt", &out) == 0);
  REQUIRE(out == "-2.98\n");
}

TEST_CASE("index summarizes a corpus") {
  fixtures::TempDir tmp("cli_index");
  fixtures::make_test_corpus(tmp.path / "corpus", 14, 2);
  std::string out;
  REQUIRE(run_cli("index --corpus " + (tmp.path / "corpus").string(),
                  tmp.path / "i.txt", &out) == 0);
  REQUIRE(out.find("music") != std::string::npos);
  REQUIRE(out.find("speech") != std::string::npos);
  REQUIRE(out.find("noise") != std::string::npos);
}

TEST_CASE("synth runs are reproducible through the CLI") {
  fixtures::TempDir tmp("cli_synth");
  fixtures::make_test_corpus(tmp.path / "corpus", 15, 3);
  const std::string base = "synth --corpus " + (tmp.path / "corpus").string() +
                           " --count 5 --seed 11 --variant d-DS --workers 2";
  REQUIRE(run_cli(base + " --out " + (tmp.path / "a").string(),
                  tmp.path / "s1.txt") == 0);
  REQUIRE(run_cli(base + " --out " + (tmp.path / "b").string(),
                  tmp.path / "s2.txt") == 0);
  for (const auto& entry : fs::directory_iterator(tmp.path / "a")) {
    REQUIRE(slurp(entry.path()) ==
            slurp(tmp.path / "b" / entry.path().filename()));
  }
}

TEST_CASE("closed loop: synth, featurize, postprocess round trip, evaluate") {
  fixtures::TempDir tmp("cli_loop");
  fixtures::make_test_corpus(tmp.path / "corpus", 16, 3);
  const fs::path out = tmp.path / "ds";
  REQUIRE(run_cli("synth --corpus " + (tmp.path / "corpus").string() +
                      " --out " + out.string() +
                      " --count 10 --seed 3 --variant d-DS",
                  tmp.path / "synth.txt") == 0);

  // Features: one 802 x 80 matrix per example.
  REQUIRE(run_cli("featurize --in " + out.string() + " --out " +
                      (tmp.path / "feat").string(),
                  tmp.path / "feat.txt") == 0);
  const MatrixF mel = read_melf(tmp.path / "feat" / "ex_000000.melf");
  REQUIRE(mel.rows() == 802);
  REQUIRE(mel.cols() == 80);

  // Perfect predictions: frame matrices written as probabilities, one full
  // timeline per example, then post-processed back into events.
  fs::create_directories(tmp.path / "probs");
  fs::create_directories(tmp.path / "ref");
  for (const auto& entry : fs::directory_iterator(out)) {
    if (entry.path().extension() != ".tsv") continue;
    const std::string stem = entry.path().stem().string();
    const EventList events = read_annotations(entry.path());
    const MatrixU8 frames = events_to_frames(events, 802);
    MatrixF probs(frames.rows(), frames.cols());
    for (std::size_t i = 0; i < frames.data().size(); ++i) {
      probs.data()[i] = frames.data()[i] ? 1.0f : 0.0f;
    }
    write_melf(tmp.path / "probs" / (stem + ".melf"), probs);
    fs::copy_file(entry.path(), tmp.path / "ref" / (stem + ".tsv"));
  }
  REQUIRE(run_cli("postprocess --probs " + (tmp.path / "probs").string() +
                      " --out " + (tmp.path / "pred").string() + " --no-smooth",
                  tmp.path / "post.txt") == 0);

  // The recovered events must reproduce the exact frame matrices.
  for (const auto& entry : fs::directory_iterator(tmp.path / "ref")) {
    const std::string stem = entry.path().stem().string();
    const EventList original = read_annotations(entry.path());
    const EventList recovered =
        read_annotations(tmp.path / "pred" / (stem + ".tsv"));
    REQUIRE(events_to_frames(recovered, 802) ==
            events_to_frames(original, 802));
  }

  // Reference evaluated against itself scores a perfect F.
  std::string eval_out;
  REQUIRE(run_cli("evaluate --ref " + (tmp.path / "ref").string() +
                      " --pred " + (tmp.path / "ref").string() + " --json " +
                      (tmp.path / "report.json").string(),
                  tmp.path / "eval.txt", &eval_out) == 0);
  std::ifstream report_file(tmp.path / "report.json");
  const auto report = nlohmann::json::parse(report_file);
  REQUIRE(report["overall"]["f"].get<double>() == 1.0);
}

TEST_CASE("postprocess stitches windowed probability files") {
  fixtures::TempDir tmp("cli_stitch");
  fs::create_directories(tmp.path / "probs");
  // Two 8 s windows at a 6 s hop covering 14 s of constant music activity.
  MatrixF window(802, 2);
  for (std::size_t i = 0; i < window.rows(); ++i) window.at(i, 0) = 1.0f;
  write_melf(tmp.path / "probs" / "rec.w0000.melf", window);
  write_melf(tmp.path / "probs" / "rec.w0001.melf", window);

  REQUIRE(run_cli("postprocess --probs " + (tmp.path / "probs").string() +
                      " --out " + (tmp.path / "out.tsv").string() +
                      " --total-frames 1400",
                  tmp.path / "p.txt") == 0);
  const EventList events = read_annotations(tmp.path / "out.tsv");
  REQUIRE(events.size() == 1);
  REQUIRE(events.events()[0] == Event{0.0, 14.0, ClassLabel::music});
}

TEST_CASE("config file supplies defaults that flags override") {
  fixtures::TempDir tmp("cli_config");
  fixtures::make_test_corpus(tmp.path / "corpus", 17, 2);
  std::ofstream(tmp.path / "run.cfg")
      << "[synth]\n"
      << "corpus = \"" << (tmp.path / "corpus").string() << "\"\n"
      << "count = 2\nseed = 5\n";
  REQUIRE(run_cli("--config " + (tmp.path / "run.cfg").string() +
                      " synth --out " + (tmp.path / "out").string(),
                  tmp.path / "c.txt") == 0);
  std::size_t wavs = 0;
  for (const auto& entry : fs::directory_iterator(tmp.path / "out")) {
    if (entry.path().extension() == ".wav") ++wavs;
  }
  REQUIRE(wavs == 2);
}
