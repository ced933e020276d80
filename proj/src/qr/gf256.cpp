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

#include "campus/qr/gf256.hpp"

#include <array>

#include "campus/qr/error.hpp"

namespace campus::qr {

namespace {

struct Tables {
  std::array<std::uint8_t, 255> exp{};
  std::array<int, 256> log{};
};

constexpr Tables build_tables() {
  Tables t;
  unsigned x = 1;
  for (int i = 0; i < 255; ++i) {
    t.exp[i] = static_cast<std::uint8_t>(x);
    t.log[x] = i;
    x <<= 1;
    if (x & 0x100) x ^= kGfPolynomial;
  }
  t.log[0] = -1;
  return t;
}

constexpr Tables kTables = build_tables();

}  // namespace

std::uint8_t gf_exp(int k) noexcept {
  k %= 255;
  if (k < 0) k += 255;
  return kTables.exp[static_cast<std::size_t>(k)];
}

int gf_log(std::uint8_t a) {
  if (a == 0) throw QrError(QrErrc::DivisionByZero, "log of zero");
  return kTables.log[a];
}

std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  return gf_exp(kTables.log[a] + kTables.log[b]);
}

std::uint8_t gf_div(std::uint8_t a, std::uint8_t b) {
  if (b == 0) throw QrError(QrErrc::DivisionByZero, "division by zero in GF(256)");
  if (a == 0) return 0;
  return gf_exp(kTables.log[a] - kTables.log[b]);
}

std::uint8_t gf_inv(std::uint8_t a) {
  if (a == 0) throw QrError(QrErrc::DivisionByZero, "zero has no inverse in GF(256)");
  return gf_exp(-kTables.log[a]);
}

std::uint8_t gf_pow(std::uint8_t a, int n) {
  if (n == 0) return 1;
  if (a == 0) {
    if (n < 0) throw QrError(QrErrc::DivisionByZero, "negative power of zero");
    return 0;
  }
  return gf_exp(static_cast<int>((static_cast<long long>(kTables.log[a]) * n) % 255));
}

}  // namespace campus::qr
