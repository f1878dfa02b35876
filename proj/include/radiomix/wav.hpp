// radiomix/wav.hpp

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
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "radiomix/audio.hpp"

namespace radiomix {

// Interleaved PCM as decoded from disk, before any standardization.
struct WavData {
  int sample_rate = 0;
  int channels = 0;
  std::vector<float> samples;  // interleaved, [-1, 1]

  std::size_t frames() const {
    return channels > 0 ? samples.size() / channels : 0;
  }
};

namespace detail {

inline std::uint32_t read_u32le(const unsigned char* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
         std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

inline std::uint16_t read_u16le(const unsigned char* p) {
  return std::uint16_t(p[0]) | std::uint16_t(p[1]) << 8;
}

inline void put_u32le(std::string& out, std::uint32_t v) {
  out.push_back(char(v & 0xFF));
  out.push_back(char((v >> 8) & 0xFF));
  out.push_back(char((v >> 16) & 0xFF));
  out.push_back(char((v >> 24) & 0xFF));
}

inline void put_u16le(std::string& out, std::uint16_t v) {
  out.push_back(char(v & 0xFF));
  out.push_back(char((v >> 8) & 0xFF));
}

}  // namespace detail

// Reads a RIFF/WAVE file holding integer PCM (16 or 24 bit) or 32-bit float
// samples, 1 or 2 channels. WAVE_FORMAT_EXTENSIBLE wrappers around those
// encodings are accepted. Anything else raises a descriptive Error.
inline WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error("not a RIFF/WAVE file: " + path.string());
  }

  const unsigned char* data = bytes.data();
  const std::size_t size = bytes.size();

  int format_tag = 0;
  int channels = 0;
  int sample_rate = 0;
  int bits = 0;
  const unsigned char* pcm = nullptr;
  std::size_t pcm_bytes = 0;

  std::size_t pos = 12;
  while (pos + 8 <= size) {
    const std::uint32_t chunk_size = detail::read_u32le(data + pos + 4);
    const unsigned char* body = data + pos + 8;
    if (pos + 8 + chunk_size > size) {
      throw Error("truncated chunk in WAV file: " + path.string());
    }
    if (std::memcmp(data + pos, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw Error("malformed fmt chunk: " + path.string());
      format_tag = detail::read_u16le(body);
      channels = detail::read_u16le(body + 2);
      sample_rate = int(detail::read_u32le(body + 4));
      bits = detail::read_u16le(body + 14);
      if (format_tag == 0xFFFE) {  // extensible: sub-format GUID leads with the tag
        if (chunk_size < 40) {
          throw Error("malformed extensible fmt chunk: " + path.string());
        }
        format_tag = detail::read_u16le(body + 24);
      }
    } else if (std::memcmp(data + pos, "data", 4) == 0) {
      pcm = body;
      pcm_bytes = chunk_size;
    }
    pos += 8 + chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (channels == 0 || pcm == nullptr) {
    throw Error("missing fmt or data chunk: " + path.string());
  }
  if (channels != 1 && channels != 2) {
    throw Error("unsupported channel count " + std::to_string(channels) +
                ": " + path.string());
  }
  if (sample_rate <= 0) throw Error("invalid sample rate: " + path.string());

  WavData wav;
  wav.sample_rate = sample_rate;
  wav.channels = channels;

  if (format_tag == 1 && bits == 16) {
    const std::size_t n = pcm_bytes / 2;
    wav.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto v =
          static_cast<std::int16_t>(detail::read_u16le(pcm + 2 * i));
      wav.samples[i] = static_cast<float>(v) / 32768.0f;
    }
  } else if (format_tag == 1 && bits == 24) {
    const std::size_t n = pcm_bytes / 3;
    wav.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned char* p = pcm + 3 * i;
      std::int32_t v = std::int32_t(p[0]) | std::int32_t(p[1]) << 8 |
                       std::int32_t(std::int8_t(p[2])) << 16;
      wav.samples[i] = static_cast<float>(v) / 8388608.0f;
    }
  } else if (format_tag == 3 && bits == 32) {
    const std::size_t n = pcm_bytes / 4;
    wav.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t u = detail::read_u32le(pcm + 4 * i);
      float f;
      std::memcpy(&f, &u, 4);
      wav.samples[i] = f;
    }
  } else {
    throw Error("unsupported WAV encoding (format tag " +
                std::to_string(format_tag) + ", " + std::to_string(bits) +
                " bit): " + path.string());
  }

  if (wav.samples.empty()) throw Error("empty data chunk: " + path.string());
  return wav;
}

namespace detail {

inline void write_wav_blob(const std::filesystem::path& path,
                           const std::string& body) {
  // Atomic publish: write to a temp sibling, then rename into place.
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot create file: " + tmp.string());
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::string wav_header(int sample_rate, int channels, int bits,
                              int format_tag, std::size_t data_bytes) {
  std::string h;
  h.reserve(44);
  h += "RIFF";
  put_u32le(h, static_cast<std::uint32_t>(36 + data_bytes));
  h += "WAVEfmt ";
  put_u32le(h, 16);
  put_u16le(h, static_cast<std::uint16_t>(format_tag));
  put_u16le(h, static_cast<std::uint16_t>(channels));
  put_u32le(h, static_cast<std::uint32_t>(sample_rate));
  const int block = channels * bits / 8;
  put_u32le(h, static_cast<std::uint32_t>(sample_rate * block));
  put_u16le(h, static_cast<std::uint16_t>(block));
  put_u16le(h, static_cast<std::uint16_t>(bits));
  h += "data";
  put_u32le(h, static_cast<std::uint32_t>(data_bytes));
  return h;
}

}  // namespace detail

// 16-bit PCM, the dataset interchange format.
inline void write_wav16(const std::filesystem::path& path,
                        const std::vector<float>& samples, int sample_rate,
                        int channels = 1) {
  std::string body =
      detail::wav_header(sample_rate, channels, 16, 1, samples.size() * 2);
  for (float s : samples) {
    const long v = std::lround(static_cast<double>(s) * 32767.0);
    const auto q = static_cast<std::int16_t>(std::clamp(v, -32768L, 32767L));
    detail::put_u16le(body, static_cast<std::uint16_t>(q));
  }
  detail::write_wav_blob(path, body);
}

// 32-bit float PCM; lossless, used by tests and fixtures.
inline void write_wav_float(const std::filesystem::path& path,
                            const std::vector<float>& samples, int sample_rate,
                            int channels = 1) {
  std::string body =
      detail::wav_header(sample_rate, channels, 32, 3, samples.size() * 4);
  for (float s : samples) {
    std::uint32_t u;
    std::memcpy(&u, &s, 4);
    detail::put_u32le(body, u);
  }
  detail::write_wav_blob(path, body);
}

// 24-bit PCM writer, only exercised by decoder tests.
inline void write_wav24(const std::filesystem::path& path,
                        const std::vector<float>& samples, int sample_rate,
                        int channels = 1) {
  std::string body =
      detail::wav_header(sample_rate, channels, 24, 1, samples.size() * 3);
  for (float s : samples) {
    const long v = std::clamp(std::lround(static_cast<double>(s) * 8388607.0),
                              -8388608L, 8388607L);
    body.push_back(char(v & 0xFF));
    body.push_back(char((v >> 8) & 0xFF));
    body.push_back(char((v >> 16) & 0xFF));
  }
  detail::write_wav_blob(path, body);
}

}  // namespace radiomix
