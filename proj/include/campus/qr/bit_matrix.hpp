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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace campus::qr {

/// Square module grid of a version 1-3 symbol (21, 25 or 29 per side).
/// `true` is dark. Indexed (row, column) from the top-left corner.
class BitMatrix {
 public:
  using Grid = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

  /// All-light matrix. Throws QrError(BadMatrixSize) for unsupported sizes.
  explicit BitMatrix(int size);
  explicit BitMatrix(Grid grid);

  int size() const noexcept { return static_cast<int>(grid_.rows()); }
  bool get(int row, int col) const { return grid_(row, col) != 0; }
  void set(int row, int col, bool dark) { grid_(row, col) = dark ? 1 : 0; }
  void flip(int row, int col) { grid_(row, col) ^= 1; }
  const Grid& grid() const noexcept { return grid_; }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.size() == b.size() && (a.grid_ == b.grid_).all();
  }

 private:
  Grid grid_;
};

bool is_supported_size(int size) noexcept;

/// The eight symmetries of the square. Rotations are clockwise.
enum class Symmetry { Identity, Rot90, Rot180, Rot270, FlipH, FlipV, Transpose, AntiTranspose };

inline constexpr Symmetry kAllSymmetries[] = {Symmetry::Identity, Symmetry::Rot90,  Symmetry::Rot180,
                                              Symmetry::Rot270,   Symmetry::FlipH,  Symmetry::FlipV,
                                              Symmetry::Transpose, Symmetry::AntiTranspose};

std::string_view to_string(Symmetry s);
Symmetry inverse(Symmetry s);
BitMatrix apply(const BitMatrix& m, Symmetry s);

/// Fixture format: size on the first line, then `size` lines of `#`/`.`.
std::string to_text(const BitMatrix& m);
/// Throws QrError(MalformedMatrixText) or QrError(BadMatrixSize).
BitMatrix bit_matrix_from_text(std::string_view text);

/// Terminal rendering with a light quiet zone, two characters per module.
std::string to_ascii_art(const BitMatrix& m, int quiet_zone = 4);

}  // namespace campus::qr
