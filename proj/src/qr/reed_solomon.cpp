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

#include "campus/qr/reed_solomon.hpp"

#include <algorithm>
#include <string>

#include "campus/qr/error.hpp"
#include "campus/qr/gf256.hpp"

namespace campus::qr {

namespace {

void check_ec_length(int ec_len) {
  if (ec_len < 1 || ec_len > kMaxEcLength) {
    throw QrError(QrErrc::BadEcLength, "ec length " + std::to_string(ec_len) + " outside 1.." +
                                           std::to_string(kMaxEcLength));
  }
}

// Polynomials below are stored lowest degree first.
std::uint8_t eval_low_first(const Bytes& poly, std::uint8_t x) {
  std::uint8_t y = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) y = gf_mul(y, x) ^ *it;
  return y;
}

[[noreturn]] void uncorrectable(const std::string& why) { throw QrError(QrErrc::Uncorrectable, why); }

}  // namespace

Bytes rs_generator(int ec_len) {
  check_ec_length(ec_len);
  Bytes g{1};  // highest degree first
  for (int i = 0; i < ec_len; ++i) {
    const auto root = gf_exp(i);
    Bytes next(g.size() + 1, 0);
    for (std::size_t j = 0; j < g.size(); ++j) {
      next[j] ^= g[j];
      next[j + 1] ^= gf_mul(g[j], root);
    }
    g = std::move(next);
  }
  return g;
}

Bytes rs_encode(std::span<const std::uint8_t> data, int ec_len) {
  check_ec_length(ec_len);
  if (data.empty()) throw QrError(QrErrc::BadEcLength, "empty data block");
  if (data.size() + static_cast<std::size_t>(ec_len) > 255) {
    throw QrError(QrErrc::BadEcLength, "codeword longer than 255 bytes");
  }
  const Bytes g = rs_generator(ec_len);
  Bytes rem(static_cast<std::size_t>(ec_len), 0);
  for (auto b : data) {
    const std::uint8_t factor = b ^ rem.front();
    std::rotate(rem.begin(), rem.begin() + 1, rem.end());
    rem.back() = 0;
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] ^= gf_mul(g[i + 1], factor);
  }
  return rem;
}

Bytes rs_syndromes(std::span<const std::uint8_t> codeword, int ec_len) {
  check_ec_length(ec_len);
  Bytes s(static_cast<std::size_t>(ec_len), 0);
  for (int i = 0; i < ec_len; ++i) {
    const auto x = gf_exp(i);
    std::uint8_t y = 0;
    for (auto c : codeword) y = gf_mul(y, x) ^ c;
    s[static_cast<std::size_t>(i)] = y;
  }
  return s;
}

RsCorrection rs_correct(std::span<const std::uint8_t> codeword, int ec_len) {
  check_ec_length(ec_len);
  const std::size_t n = codeword.size();
  if (n < static_cast<std::size_t>(ec_len) + 1 || n > 255) {
    throw QrError(QrErrc::BadEcLength, "codeword length " + std::to_string(n) + " invalid for ec length " +
                                           std::to_string(ec_len));
  }
  const std::size_t k = n - static_cast<std::size_t>(ec_len);
  const Bytes synd = rs_syndromes(codeword, ec_len);
  if (std::all_of(synd.begin(), synd.end(), [](auto s) { return s == 0; })) {
    return {Bytes(codeword.begin(), codeword.begin() + static_cast<std::ptrdiff_t>(k)), 0};
  }

  // Berlekamp-Massey: error locator lambda(x) = prod (1 - X_j x).
  Bytes lambda{1};
  Bytes prev{1};
  int errors = 0;
  int shift = 1;
  std::uint8_t prev_discrepancy = 1;
  for (int step = 0; step < ec_len; ++step) {
    std::uint8_t d = synd[static_cast<std::size_t>(step)];
    for (int i = 1; i <= errors && i < static_cast<int>(lambda.size()); ++i) {
      d ^= gf_mul(lambda[static_cast<std::size_t>(i)], synd[static_cast<std::size_t>(step - i)]);
    }
    if (d == 0) {
      ++shift;
      continue;
    }
    const std::uint8_t coef = gf_div(d, prev_discrepancy);
    Bytes updated = lambda;
    if (updated.size() < prev.size() + static_cast<std::size_t>(shift)) {
      updated.resize(prev.size() + static_cast<std::size_t>(shift), 0);
    }
    for (std::size_t i = 0; i < prev.size(); ++i) {
      updated[i + static_cast<std::size_t>(shift)] ^= gf_mul(coef, prev[i]);
    }
    if (2 * errors <= step) {
      prev = lambda;
      errors = step + 1 - errors;
      prev_discrepancy = d;
      shift = 1;
    } else {
      ++shift;
    }
    lambda = std::move(updated);
  }
  while (lambda.size() > 1 && lambda.back() == 0) lambda.pop_back();
  if (errors > ec_len / 2 || static_cast<int>(lambda.size()) - 1 != errors) {
    uncorrectable("error locator degree exceeds correction capability");
  }

  // Chien search over the positions that exist in this (shortened) code.
  std::vector<std::size_t> positions;
  for (std::size_t idx = 0; idx < n; ++idx) {
    const int power = static_cast<int>(n - 1 - idx);
    if (eval_low_first(lambda, gf_exp(-power)) == 0) positions.push_back(idx);
  }
  if (static_cast<int>(positions.size()) != errors) uncorrectable("error locator roots do not match its degree");

  // Forney: omega = S * lambda mod x^ec_len; e = X * omega(X^-1) / lambda'(X^-1).
  Bytes omega(static_cast<std::size_t>(ec_len), 0);
  for (std::size_t i = 0; i < synd.size(); ++i) {
    for (std::size_t j = 0; j < lambda.size() && i + j < omega.size(); ++j) {
      omega[i + j] ^= gf_mul(synd[i], lambda[j]);
    }
  }
  Bytes derivative(lambda.size() > 1 ? lambda.size() - 1 : 1, 0);
  for (std::size_t i = 1; i < lambda.size(); i += 2) derivative[i - 1] = lambda[i];

  Bytes fixed(codeword.begin(), codeword.end());
  for (auto idx : positions) {
    const int power = static_cast<int>(n - 1 - idx);
    const auto x_inv = gf_exp(-power);
    const auto denom = eval_low_first(derivative, x_inv);
    if (denom == 0) uncorrectable("degenerate error locator derivative");
    fixed[idx] ^= gf_mul(gf_exp(power), gf_div(eval_low_first(omega, x_inv), denom));
  }

  const Bytes check = rs_syndromes(fixed, ec_len);
  if (!std::all_of(check.begin(), check.end(), [](auto s) { return s == 0; })) {
    uncorrectable("syndromes nonzero after correction");
  }
  Bytes data(fixed.begin(), fixed.begin() + static_cast<std::ptrdiff_t>(k));
  const Bytes parity = rs_encode(data, ec_len);
  if (!std::equal(parity.begin(), parity.end(), fixed.begin() + static_cast<std::ptrdiff_t>(k))) {
    uncorrectable("re-encoded parity disagrees with corrected codeword");
  }
  return {std::move(data), errors};
}

}  // namespace campus::qr
