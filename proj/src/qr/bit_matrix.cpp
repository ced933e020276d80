//
// Copyright 2026 The Campus AR Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "campus/qr/bit_matrix.hpp"

#include <sstream>

#include "campus/qr/error.hpp"

namespace campus::qr {

bool is_supported_size(int size) noexcept { return size == 21 || size == 25 || size == 29; }

BitMatrix::BitMatrix(int size) {
  if (!is_supported_size(size)) {
    throw QrError(QrErrc::BadMatrixSize, "matrix size " + std::to_string(size) + " is not 21, 25 or 29");
  }
  grid_ = Grid::Zero(size, size);
}

BitMatrix::BitMatrix(Grid grid) : grid_(std::move(grid)) {
  if (grid_.rows() != grid_.cols() || !is_supported_size(static_cast<int>(grid_.rows()))) {
    throw QrError(QrErrc::BadMatrixSize, "matrix is " + std::to_string(grid_.rows()) + "x" +
                                             std::to_string(grid_.cols()) + ", expected 21, 25 or 29 square");
  }
}

std::string_view to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Identity: return "IDENTITY";
    case Symmetry::Rot90: return "ROT90";
    case Symmetry::Rot180: return "ROT180";
    case Symmetry::Rot270: return "ROT270";
    case Symmetry::FlipH: return "FLIP_H";
    case Symmetry::FlipV: return "FLIP_V";
    case Symmetry::Transpose: return "TRANSPOSE";
    case Symmetry::AntiTranspose: return "ANTI_TRANSPOSE";
  }
  return "?";
}

Symmetry inverse(Symmetry s) {
  if (s == Symmetry::Rot90) return Symmetry::Rot270;
  if (s == Symmetry::Rot270) return Symmetry::Rot90;
  return s;
}

BitMatrix apply(const BitMatrix& m, Symmetry s) {
  const auto& g = m.grid();
  switch (s) {
    case Symmetry::Identity: return m;
    case Symmetry::Rot90: return BitMatrix(BitMatrix::Grid(g.transpose().rowwise().reverse()));
    case Symmetry::Rot180: return BitMatrix(BitMatrix::Grid(g.reverse()));
    case Symmetry::Rot270: return BitMatrix(BitMatrix::Grid(g.transpose().colwise().reverse()));
    case Symmetry::FlipH: return BitMatrix(BitMatrix::Grid(g.rowwise().reverse()));
    case Symmetry::FlipV: return BitMatrix(BitMatrix::Grid(g.colwise().reverse()));
    case Symmetry::Transpose: return BitMatrix(BitMatrix::Grid(g.transpose()));
    case Symmetry::AntiTranspose: return BitMatrix(BitMatrix::Grid(g.transpose().reverse()));
  }
  return m;
}

std::string to_text(const BitMatrix& m) {
  std::string out = std::to_string(m.size()) + "\n";
  for (int r = 0; r < m.size(); ++r) {
    for (int c = 0; c < m.size(); ++c) out += m.get(r, c) ? '#' : '.';
    out += '\n';
  }
  return out;
}

BitMatrix bit_matrix_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  const auto bad = [](const std::string& why) { return QrError(QrErrc::MalformedMatrixText, why); };
  const auto strip = [](std::string& s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  };

  std::string line;
  if (!std::getline(in, line)) throw bad("empty input");
  strip(line);
  int size = 0;
  try {
    std::size_t used = 0;
    size = std::stoi(line, &used);
    if (used != line.size()) throw bad("size line '" + line + "' is not an integer");
  } catch (const std::logic_error&) {
    throw bad("size line '" + line + "' is not an integer");
  }
  BitMatrix m(size);
  for (int r = 0; r < size; ++r) {
    if (!std::getline(in, line)) throw bad("expected " + std::to_string(size) + " rows, got " + std::to_string(r));
    strip(line);
    if (static_cast<int>(line.size()) != size) {
      throw bad("row " + std::to_string(r + 1) + " has " + std::to_string(line.size()) + " modules");
    }
    for (int c = 0; c < size; ++c) {
      if (line[c] == '#') {
        m.set(r, c, true);
      } else if (line[c] != '.') {
        throw bad("row " + std::to_string(r + 1) + " contains '" + std::string(1, line[c]) + "'");
      }
    }
  }
  while (std::getline(in, line)) {
    strip(line);
    if (!line.empty()) throw bad("trailing content after matrix rows");
  }
  return m;
}

std::string to_ascii_art(const BitMatrix& m, int quiet_zone) {
  std::string out;
  const int n = m.size();
  for (int r = -quiet_zone; r < n + quiet_zone; ++r) {
    for (int c = -quiet_zone; c < n + quiet_zone; ++c) {
      const bool dark = r >= 0 && c >= 0 && r < n && c < n && m.get(r, c);
      out += dark ? "##" : "  ";
    }
    out += '\n';
  }
  return out;
}

}  // namespace campus::qr
