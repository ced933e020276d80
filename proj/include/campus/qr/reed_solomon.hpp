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
#include <span>
#include <vector>

namespace campus::qr {

using Bytes = std::vector<std::uint8_t>;

inline constexpr int kMaxEcLength = 30;

/// Monic generator prod_{i=0}^{ec_len-1} (x - alpha^i), highest degree
/// first, ec_len + 1 coefficients.
Bytes rs_generator(int ec_len);

/// Parity bytes: data * x^ec_len mod g(x). Throws QrError(BadEcLength) for
/// ec_len outside 1..30, empty data, or codewords longer than 255.
Bytes rs_encode(std::span<const std::uint8_t> data, int ec_len);

/// S_i = c(alpha^i) for i in [0, ec_len), the first byte being the highest
/// degree coefficient.
Bytes rs_syndromes(std::span<const std::uint8_t> codeword, int ec_len);

struct RsCorrection {
  Bytes data;
  int corrected = 0;
};

/// Corrects up to floor(ec_len / 2) byte errors (Berlekamp-Massey, Chien
/// search, Forney). The corrected data is re-encoded and must reproduce the
/// corrected parity. Throws QrError(Uncorrectable) otherwise.
RsCorrection rs_correct(std::span<const std::uint8_t> codeword, int ec_len);

}  // namespace campus::qr
