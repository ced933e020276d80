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

namespace campus::qr {

// Arithmetic in GF(2^8) modulo x^8 + x^4 + x^3 + x^2 + 1 (0x11D), generator 2.

inline constexpr unsigned kGfPolynomial = 0x11D;

std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) noexcept;
/// Throws QrError(DivisionByZero) when b == 0.
std::uint8_t gf_div(std::uint8_t a, std::uint8_t b);
/// Throws QrError(DivisionByZero) when a == 0.
std::uint8_t gf_inv(std::uint8_t a);
/// a^n; negative n requires a != 0. gf_pow(0, 0) == 1.
std::uint8_t gf_pow(std::uint8_t a, int n);
/// alpha^k for any integer k.
std::uint8_t gf_exp(int k) noexcept;
/// Discrete log base alpha; a must be nonzero.
int gf_log(std::uint8_t a);

}  // namespace campus::qr
