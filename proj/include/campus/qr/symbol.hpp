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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "campus/qr/bit_matrix.hpp"
#include "campus/qr/reed_solomon.hpp"

namespace campus::qr {

enum class EcLevel { L, M };

std::string_view to_string(EcLevel level);
std::optional<EcLevel> ec_level_from_string(std::string_view s);

struct QrSymbolConfig {
  int version = 1;  // 1..3
  EcLevel ec_level = EcLevel::M;
  int mask = 0;  // 0..7
  friend bool operator==(const QrSymbolConfig&, const QrSymbolConfig&) = default;
};

/// Every supported (version, level) pair is a single Reed-Solomon block.
struct RsBlockShape {
  int total_codewords = 0;
  int data_codewords = 0;
  int ec_codewords = 0;
  int correctable() const noexcept { return ec_codewords / 2; }
};

inline constexpr int kMinVersion = 1;
inline constexpr int kMaxVersion = 3;

RsBlockShape block_shape(int version, EcLevel level);
/// Byte-mode payload capacity: data codewords minus the 12-bit header.
int byte_capacity(int version, EcLevel level);
constexpr int symbol_size(int version) noexcept { return 17 + 4 * version; }

/// Pins the version and/or the mask instead of choosing them.
struct ForcedConfig {
  std::optional<int> version;
  std::optional<int> mask;
};

struct EncodedSymbol {
  BitMatrix matrix;
  QrSymbolConfig config;
};

/// Byte-mode encoder. Picks the smallest fitting version and the mask with
/// the lowest penalty unless forced. Throws QrError(PayloadTooLarge) or
/// QrError(BadForcedConfig).
EncodedSymbol encode_symbol(std::span<const std::uint8_t> payload, EcLevel level, const ForcedConfig& forced = {});
EncodedSymbol encode_symbol(std::string_view payload, EcLevel level, const ForcedConfig& forced = {});

struct DecodeReport {
  Bytes payload;
  int corrected_errors = 0;
  /// The symmetry that maps the upright symbol onto the input matrix.
  Symmetry orientation_applied = Symmetry::Identity;
  QrSymbolConfig config;

  std::string payload_text() const { return {payload.begin(), payload.end()}; }
};

/// Finds the orientation whose finder patterns sit at the top-left,
/// top-right and bottom-left corners (plus the alignment pattern near the
/// fourth corner for versions 2-3), reads the format information, unmasks,
/// corrects and parses the byte-mode segment. Throws QrError with
/// NoFinderOrientation, BadFormatInfo, Uncorrectable or MalformedBitstream.
DecodeReport decode_symbol(const BitMatrix& matrix);

// -- Building blocks, exposed for tests and tooling -------------------------

/// 15-bit format word: BCH(15,5) over the 2-bit level indicator (L=01,
/// M=00, Q=11, H=10) and the 3-bit mask, XOR 0x5412.
std::uint16_t format_word(unsigned level_indicator, int mask);
std::uint16_t format_bits(EcLevel level, int mask);

struct FormatMatch {
  unsigned level_indicator;
  int mask;
  int distance;
  /// Only L and M symbols are supported.
  std::optional<EcLevel> level() const;
};
/// Nearest valid format word within Hamming distance 3.
std::optional<FormatMatch> decode_format_bits(std::uint16_t bits);

bool mask_bit(int mask, int row, int col) noexcept;
bool is_function_module(int version, int row, int col);
/// (row, col) of every data-region module in placement order. The first
/// 8 * total_codewords entries carry codeword bits, most significant first.
const std::vector<std::pair<int, int>>& data_module_order(int version);
/// Penalty score (rules N1-N4) of a finished symbol.
int mask_penalty(const BitMatrix& m);

}  // namespace campus::qr
