// radiomix/matrix.hpp

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

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "radiomix/audio.hpp"

namespace radiomix {

// Dense row-major matrix; frames along rows.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using MatrixF = Matrix<float>;
using MatrixU8 = Matrix<std::uint8_t>;

// MELF container: magic "MELF", u32le rows, u32le cols, then row-major f32le.
// Shared by feature files and per-window probability files.
inline void write_melf(const std::filesystem::path& path, const MatrixF& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot create file: " + path.string());
  out.write("MELF", 4);
  const std::uint32_t dims[2] = {static_cast<std::uint32_t>(m.rows()),
                                 static_cast<std::uint32_t>(m.cols())};
  char buf[8];
  for (int d = 0; d < 2; ++d) {
    buf[4 * d + 0] = char(dims[d] & 0xFF);
    buf[4 * d + 1] = char((dims[d] >> 8) & 0xFF);
    buf[4 * d + 2] = char((dims[d] >> 16) & 0xFF);
    buf[4 * d + 3] = char((dims[d] >> 24) & 0xFF);
  }
  out.write(buf, 8);
  out.write(reinterpret_cast<const char*>(m.data().data()),
            static_cast<std::streamsize>(m.data().size() * sizeof(float)));
  if (!out) throw Error("write failed: " + path.string());
}

inline MatrixF read_melf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "MELF", 4) != 0) {
    throw Error("not a MELF file: " + path.string());
  }
  unsigned char dims[8];
  in.read(reinterpret_cast<char*>(dims), 8);
  if (!in) throw Error("truncated MELF header: " + path.string());
  const auto get = [&dims](int d) {
    return std::uint32_t(dims[4 * d]) | std::uint32_t(dims[4 * d + 1]) << 8 |
           std::uint32_t(dims[4 * d + 2]) << 16 |
           std::uint32_t(dims[4 * d + 3]) << 24;
  };
  MatrixF m(get(0), get(1));
  in.read(reinterpret_cast<char*>(m.data().data()),
          static_cast<std::streamsize>(m.data().size() * sizeof(float)));
  if (!in) throw Error("truncated MELF payload: " + path.string());
  return m;
}

}  // namespace radiomix
