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

#include "campus/qr/symbol.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <limits>

#include "campus/qr/error.hpp"

namespace campus::qr {

namespace {

// Indexed [version - 1][level]; levels ordered L, M.
constexpr std::array<std::array<RsBlockShape, 2>, 3> kBlocks{{
    {{{26, 19, 7}, {26, 16, 10}}},
    {{{44, 34, 10}, {44, 28, 16}}},
    {{{70, 55, 15}, {70, 44, 26}}},
}};

constexpr std::uint16_t kFormatXor = 0x5412;
constexpr unsigned kFormatGenerator = 0x537;

constexpr int kPenaltyN1 = 3;
constexpr int kPenaltyN2 = 3;
constexpr int kPenaltyN3 = 40;
constexpr int kPenaltyN4 = 10;

constexpr unsigned level_bits(EcLevel level) { return level == EcLevel::L ? 1u : 0u; }

}  // namespace

std::uint16_t format_word(unsigned level_indicator, int mask) {
  const unsigned data = ((level_indicator & 3u) << 3) | static_cast<unsigned>(mask);
  unsigned rem = data;
  for (int i = 0; i < 10; ++i) rem = (rem << 1) ^ ((rem >> 9) * kFormatGenerator);
  return static_cast<std::uint16_t>(((data << 10) | (rem & 0x3FF)) ^ kFormatXor);
}

namespace {

bool bit_of(unsigned value, int i) { return ((value >> i) & 1u) != 0; }

int alignment_center(int version) { return version >= 2 ? symbol_size(version) - 7 : -1; }

class Canvas {
 public:
  explicit Canvas(int version) : version_(version), matrix_(symbol_size(version)) {}

  void draw_function_patterns() {
    const int n = matrix_.size();
    for (int i = 8; i < n - 8; ++i) {
      matrix_.set(6, i, i % 2 == 0);
      matrix_.set(i, 6, i % 2 == 0);
    }
    draw_finder(0, 0);
    draw_finder(0, n - 7);
    draw_finder(n - 7, 0);
    if (const int a = alignment_center(version_); a > 0) {
      for (int dr = -2; dr <= 2; ++dr) {
        for (int dc = -2; dc <= 2; ++dc) matrix_.set(a + dr, a + dc, std::max(std::abs(dr), std::abs(dc)) != 1);
      }
    }
  }

  void draw_codewords(const Bytes& codewords) {
    const auto& order = data_module_order(version_);
    for (std::size_t i = 0; i < codewords.size() * 8; ++i) {
      const auto [r, c] = order[i];
      matrix_.set(r, c, bit_of(codewords[i / 8], 7 - static_cast<int>(i % 8)));
    }
  }

  void apply_mask(int mask) {
    for (const auto& [r, c] : data_module_order(version_)) {
      if (mask_bit(mask, r, c)) matrix_.flip(r, c);
    }
  }

  void draw_format(std::uint16_t bits) {
    const int n = matrix_.size();
    for (int i = 0; i <= 5; ++i) matrix_.set(i, 8, bit_of(bits, i));
    matrix_.set(7, 8, bit_of(bits, 6));
    matrix_.set(8, 8, bit_of(bits, 7));
    matrix_.set(8, 7, bit_of(bits, 8));
    for (int i = 9; i < 15; ++i) matrix_.set(8, 14 - i, bit_of(bits, i));
    for (int i = 0; i < 8; ++i) matrix_.set(8, n - 1 - i, bit_of(bits, i));
    for (int i = 8; i < 15; ++i) matrix_.set(n - 15 + i, 8, bit_of(bits, i));
    matrix_.set(n - 8, 8, true);
  }

  const BitMatrix& matrix() const { return matrix_; }

 private:
  void draw_finder(int top, int left) {
    const int n = matrix_.size();
    for (int dr = -1; dr <= 7; ++dr) {
      for (int dc = -1; dc <= 7; ++dc) {
        const int r = top + dr;
        const int c = left + dc;
        if (r < 0 || c < 0 || r >= n || c >= n) continue;
        const int dist = std::max(std::abs(dr - 3), std::abs(dc - 3));
        matrix_.set(r, c, dist != 2 && dist != 4);
      }
    }
  }

  int version_;
  BitMatrix matrix_;
};

Bytes build_data_codewords(std::span<const std::uint8_t> payload, const RsBlockShape& shape) {
  const std::size_t capacity_bits = static_cast<std::size_t>(shape.data_codewords) * 8;
  std::vector<bool> bits;
  const auto append = [&](unsigned value, int width) {
    for (int i = width - 1; i >= 0; --i) bits.push_back(bit_of(value, i));
  };
  append(0b0100, 4);
  append(static_cast<unsigned>(payload.size()), 8);
  for (auto b : payload) append(b, 8);
  append(0, static_cast<int>(std::min<std::size_t>(4, capacity_bits - bits.size())));
  append(0, static_cast<int>((8 - bits.size() % 8) % 8));

  Bytes out;
  for (std::size_t i = 0; i < bits.size(); i += 8) {
    std::uint8_t byte = 0;
    for (std::size_t j = 0; j < 8; ++j) byte = static_cast<std::uint8_t>((byte << 1) | (bits[i + j] ? 1 : 0));
    out.push_back(byte);
  }
  for (std::uint8_t pad = 0xEC; out.size() < static_cast<std::size_t>(shape.data_codewords); pad ^= 0xEC ^ 0x11) {
    out.push_back(pad);
  }
  return out;
}

// -- penalty ---------------------------------------------------------------

int run_penalty(const BitMatrix& m, bool by_row) {
  const int n = m.size();
  int penalty = 0;
  for (int i = 0; i < n; ++i) {
    int run = 0;
    bool prev = false;
    for (int j = 0; j < n; ++j) {
      const bool v = by_row ? m.get(i, j) : m.get(j, i);
      if (j > 0 && v == prev) {
        ++run;
      } else {
        if (run >= 5) penalty += kPenaltyN1 + (run - 5);
        run = 1;
        prev = v;
      }
    }
    if (run >= 5) penalty += kPenaltyN1 + (run - 5);
  }
  return penalty;
}

int block_penalty(const BitMatrix& m) {
  int penalty = 0;
  for (int r = 0; r + 1 < m.size(); ++r) {
    for (int c = 0; c + 1 < m.size(); ++c) {
      const bool v = m.get(r, c);
      if (v == m.get(r, c + 1) && v == m.get(r + 1, c) && v == m.get(r + 1, c + 1)) penalty += kPenaltyN2;
    }
  }
  return penalty;
}

// Dark-light-dark-dark-dark-light-dark with four light modules on either
// side; modules outside the symbol count as light.
int finder_like_penalty(const BitMatrix& m) {
  static constexpr std::array<bool, 7> kPattern{true, false, true, true, true, false, true};
  const int n = m.size();
  int count = 0;
  for (int by_row = 0; by_row < 2; ++by_row) {
    const auto at = [&](int i, int j) {
      if (j < 0 || j >= n) return false;
      return by_row ? m.get(i, j) : m.get(j, i);
    };
    const auto light = [&](int i, int from, int to) {
      for (int j = from; j < to; ++j) {
        if (at(i, j)) return false;
      }
      return true;
    };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j + 7 <= n; ++j) {
        bool match = true;
        for (int k = 0; k < 7 && match; ++k) match = at(i, j + k) == kPattern[static_cast<std::size_t>(k)];
        if (match && (light(i, j - 4, j) || light(i, j + 7, j + 11))) ++count;
      }
    }
  }
  return count * kPenaltyN3;
}

int balance_penalty(const BitMatrix& m) {
  const long total = static_cast<long>(m.size()) * m.size();
  const long dark = static_cast<long>(m.grid().template cast<long>().sum());
  return static_cast<int>(std::labs(dark * 2 - total) * 10 / total) * kPenaltyN4;
}

// -- decoding --------------------------------------------------------------

int finder_mismatches(const BitMatrix& m, int top, int left) {
  int bad = 0;
  for (int dr = 0; dr < 7; ++dr) {
    for (int dc = 0; dc < 7; ++dc) {
      const int dist = std::max(std::abs(dr - 3), std::abs(dc - 3));
      if (m.get(top + dr, left + dc) != (dist != 2)) ++bad;
    }
  }
  return bad;
}

int alignment_mismatches(const BitMatrix& m, int center) {
  int bad = 0;
  for (int dr = -2; dr <= 2; ++dr) {
    for (int dc = -2; dc <= 2; ++dc) {
      if (m.get(center + dr, center + dc) != (std::max(std::abs(dr), std::abs(dc)) != 1)) ++bad;
    }
  }
  return bad;
}

constexpr int kFinderTolerance = 3;
constexpr int kAlignmentTolerance = 2;

bool upright(const BitMatrix& m, int version) {
  const int n = m.size();
  if (finder_mismatches(m, 0, 0) > kFinderTolerance) return false;
  if (finder_mismatches(m, 0, n - 7) > kFinderTolerance) return false;
  if (finder_mismatches(m, n - 7, 0) > kFinderTolerance) return false;
  if (finder_mismatches(m, n - 7, n - 7) <= kFinderTolerance) return false;
  if (const int a = alignment_center(version); a > 0 && alignment_mismatches(m, a) > kAlignmentTolerance) {
    return false;
  }
  return true;
}

std::uint16_t read_format_copy(const BitMatrix& m, bool second) {
  const int n = m.size();
  unsigned bits = 0;
  const auto put = [&](int i, bool v) { bits |= (v ? 1u : 0u) << i; };
  if (!second) {
    for (int i = 0; i <= 5; ++i) put(i, m.get(i, 8));
    put(6, m.get(7, 8));
    put(7, m.get(8, 8));
    put(8, m.get(8, 7));
    for (int i = 9; i < 15; ++i) put(i, m.get(8, 14 - i));
  } else {
    for (int i = 0; i < 8; ++i) put(i, m.get(8, n - 1 - i));
    for (int i = 8; i < 15; ++i) put(i, m.get(n - 15 + i, 8));
  }
  return static_cast<std::uint16_t>(bits);
}

// Decoder progress, used to report the most specific failure.
enum class Stage { Finder = 0, Format = 1, Correction = 2, Bitstream = 3 };

struct Candidate {
  Symmetry symmetry;
  BitMatrix upright;
  std::optional<FormatMatch> format;
};

class BitReader {
 public:
  explicit BitReader(const Bytes& bytes) : bytes_(bytes) {}
  std::size_t remaining() const { return bytes_.size() * 8 - pos_; }
  unsigned read(int width) {
    unsigned v = 0;
    for (int i = 0; i < width; ++i, ++pos_) {
      v = (v << 1) | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
    }
    return v;
  }

 private:
  const Bytes& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(EcLevel level) { return level == EcLevel::L ? "L" : "M"; }

std::optional<EcLevel> ec_level_from_string(std::string_view s) {
  if (s == "L" || s == "l") return EcLevel::L;
  if (s == "M" || s == "m") return EcLevel::M;
  return std::nullopt;
}

RsBlockShape block_shape(int version, EcLevel level) {
  if (version < kMinVersion || version > kMaxVersion) {
    throw QrError(QrErrc::BadForcedConfig, "version " + std::to_string(version) + " outside 1..3");
  }
  return kBlocks[static_cast<std::size_t>(version - 1)][level == EcLevel::L ? 0 : 1];
}

int byte_capacity(int version, EcLevel level) { return block_shape(version, level).data_codewords - 2; }

std::uint16_t format_bits(EcLevel level, int mask) { return format_word(level_bits(level), mask); }

std::optional<EcLevel> FormatMatch::level() const {
  if (level_indicator == 1) return EcLevel::L;
  if (level_indicator == 0) return EcLevel::M;
  return std::nullopt;
}

std::optional<FormatMatch> decode_format_bits(std::uint16_t bits) {
  std::optional<FormatMatch> best;
  for (unsigned level = 0; level < 4; ++level) {
    for (int mask = 0; mask < 8; ++mask) {
      const int d = std::popcount(static_cast<unsigned>(format_word(level, mask) ^ bits));
      if (d <= 3 && (!best || d < best->distance)) best = FormatMatch{level, mask, d};
    }
  }
  return best;
}

bool mask_bit(int mask, int row, int col) noexcept {
  const int i = row;
  const int j = col;
  switch (mask) {
    case 0: return (i + j) % 2 == 0;
    case 1: return i % 2 == 0;
    case 2: return j % 3 == 0;
    case 3: return (i + j) % 3 == 0;
    case 4: return (i / 2 + j / 3) % 2 == 0;
    case 5: return (i * j) % 2 + (i * j) % 3 == 0;
    case 6: return ((i * j) % 2 + (i * j) % 3) % 2 == 0;
    case 7: return ((i + j) % 2 + (i * j) % 3) % 2 == 0;
    default: return false;
  }
}

bool is_function_module(int version, int row, int col) {
  const int n = symbol_size(version);
  if (row <= 7 && (col <= 7 || col >= n - 8)) return true;
  if (row >= n - 8 && col <= 7) return true;
  if (row == 6 || col == 6) return true;
  if (row == 8 && (col <= 8 || col >= n - 8)) return true;
  if (col == 8 && (row <= 8 || row >= n - 8)) return true;
  if (const int a = alignment_center(version); a > 0 && std::abs(row - a) <= 2 && std::abs(col - a) <= 2) {
    return true;
  }
  return false;
}

static std::vector<std::pair<int, int>> compute_module_order(int version) {
  const int n = symbol_size(version);
  std::vector<std::pair<int, int>> order;
  for (int right = n - 1; right >= 1; right -= 2) {
    if (right == 6) right = 5;
    const bool upward = ((right + 1) & 2) == 0;
    for (int vert = 0; vert < n; ++vert) {
      const int row = upward ? n - 1 - vert : vert;
      for (int j = 0; j < 2; ++j) {
        const int col = right - j;
        if (!is_function_module(version, row, col)) order.emplace_back(row, col);
      }
    }
  }
  return order;
}

const std::vector<std::pair<int, int>>& data_module_order(int version) {
  static const std::array<std::vector<std::pair<int, int>>, 3> kOrders{
      compute_module_order(1), compute_module_order(2), compute_module_order(3)};
  if (version < kMinVersion || version > kMaxVersion) {
    throw QrError(QrErrc::BadForcedConfig, "version " + std::to_string(version) + " outside 1..3");
  }
  return kOrders[static_cast<std::size_t>(version - 1)];
}

int mask_penalty(const BitMatrix& m) {
  return run_penalty(m, true) + run_penalty(m, false) + block_penalty(m) + finder_like_penalty(m) +
         balance_penalty(m);
}

EncodedSymbol encode_symbol(std::span<const std::uint8_t> payload, EcLevel level, const ForcedConfig& forced) {
  if (forced.mask && (*forced.mask < 0 || *forced.mask > 7)) {
    throw QrError(QrErrc::BadForcedConfig, "mask " + std::to_string(*forced.mask) + " outside 0..7");
  }
  if (forced.version && (*forced.version < kMinVersion || *forced.version > kMaxVersion)) {
    throw QrError(QrErrc::BadForcedConfig, "version " + std::to_string(*forced.version) + " outside 1..3");
  }

  int version = forced.version.value_or(kMinVersion);
  while (static_cast<int>(payload.size()) > byte_capacity(version, level)) {
    if (forced.version || version == kMaxVersion) {
      throw QrError(QrErrc::PayloadTooLarge, std::to_string(payload.size()) + " bytes exceed the " +
                                                 std::to_string(byte_capacity(version, level)) +
                                                 "-byte capacity of version " + std::to_string(version) + "-" +
                                                 std::string(to_string(level)));
    }
    ++version;
  }

  const auto shape = block_shape(version, level);
  Bytes codewords = build_data_codewords(payload, shape);
  const Bytes parity = rs_encode(codewords, shape.ec_codewords);
  codewords.insert(codewords.end(), parity.begin(), parity.end());

  Canvas base(version);
  base.draw_function_patterns();
  base.draw_codewords(codewords);

  std::optional<EncodedSymbol> best;
  int best_penalty = std::numeric_limits<int>::max();
  for (int mask = 0; mask < 8; ++mask) {
    if (forced.mask && mask != *forced.mask) continue;
    Canvas trial = base;
    trial.apply_mask(mask);
    trial.draw_format(format_bits(level, mask));
    const int penalty = forced.mask ? 0 : mask_penalty(trial.matrix());
    if (penalty < best_penalty) {
      best_penalty = penalty;
      best = EncodedSymbol{trial.matrix(), {version, level, mask}};
    }
  }
  return *best;
}

EncodedSymbol encode_symbol(std::string_view payload, EcLevel level, const ForcedConfig& forced) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(payload.data());
  return encode_symbol(std::span<const std::uint8_t>(p, payload.size()), level, forced);
}

DecodeReport decode_symbol(const BitMatrix& matrix) {
  const int n = matrix.size();
  const int version = (n - 17) / 4;

  std::vector<Candidate> candidates;
  for (auto s : kAllSymmetries) {
    BitMatrix m = apply(matrix, inverse(s));
    if (!upright(m, version)) continue;
    auto first = decode_format_bits(read_format_copy(m, false));
    auto second = decode_format_bits(read_format_copy(m, true));
    std::optional<FormatMatch> format = first;
    if (second && (!format || second->distance < format->distance)) format = second;
    candidates.push_back({s, std::move(m), format});
  }
  if (candidates.empty()) {
    throw QrError(QrErrc::NoFinderOrientation, "no symmetry places finder patterns at three corners");
  }
  // Closest format match first; the enumeration order breaks ties.
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    const int da = a.format ? a.format->distance : 99;
    const int db = b.format ? b.format->distance : 99;
    return da < db;
  });

  Stage reached = Stage::Finder;
  std::string last_detail = "no candidate orientation decoded";
  for (const auto& cand : candidates) {
    if (!cand.format || !cand.format->level()) {
      reached = std::max(reached, Stage::Format);
      if (reached == Stage::Format) last_detail = "format information unreadable";
      continue;
    }
    const EcLevel level = *cand.format->level();
    const int mask = cand.format->mask;
    const auto shape = block_shape(version, level);
    const auto& order = data_module_order(version);

    Bytes codewords(static_cast<std::size_t>(shape.total_codewords), 0);
    for (std::size_t i = 0; i < codewords.size() * 8; ++i) {
      const auto [r, c] = order[i];
      const bool bit = cand.upright.get(r, c) != mask_bit(mask, r, c);
      if (bit) codewords[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
    }

    RsCorrection fixed;
    try {
      fixed = rs_correct(codewords, shape.ec_codewords);
    } catch (const QrError& e) {
      if (reached <= Stage::Correction) {
        reached = Stage::Correction;
        last_detail = e.detail();
      }
      continue;
    }

    BitReader reader(fixed.data);
    const unsigned mode = reader.read(4);
    const unsigned count = reader.read(8);
    if (mode != 0b0100 || count * 8 > reader.remaining()) {
      reached = Stage::Bitstream;
      last_detail = mode != 0b0100 ? "mode indicator is not byte mode"
                                   : "character count " + std::to_string(count) + " overruns the data";
      continue;
    }
    DecodeReport report;
    report.payload.reserve(count);
    for (unsigned i = 0; i < count; ++i) report.payload.push_back(static_cast<std::uint8_t>(reader.read(8)));
    report.corrected_errors = fixed.corrected;
    report.orientation_applied = cand.symmetry;
    report.config = {version, level, mask};
    return report;
  }

  switch (reached) {
    case Stage::Finder:
    case Stage::Format: throw QrError(QrErrc::BadFormatInfo, last_detail);
    case Stage::Correction: throw QrError(QrErrc::Uncorrectable, last_detail);
    case Stage::Bitstream: throw QrError(QrErrc::MalformedBitstream, last_detail);
  }
  throw QrError(QrErrc::BadFormatInfo, last_detail);
}

}  // namespace campus::qr
