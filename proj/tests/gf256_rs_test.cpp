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

#include <doctest.h>

#include <set>

#include "campus/qr/error.hpp"
#include "campus/qr/gf256.hpp"
#include "campus/qr/reed_solomon.hpp"
#include "support/test_support.hpp"

using namespace campus;
using namespace campus::qr;

namespace {

// Carry-less multiply then reduce by x^8 + x^4 + x^3 + x^2 + 1.
std::uint8_t slow_mul(std::uint8_t a, std::uint8_t b) {
  unsigned r = 0;
  for (int i = 0; i < 8; ++i) {
    if (b >> i & 1) r ^= static_cast<unsigned>(a) << i;
  }
  for (int bit = 15; bit >= 8; --bit) {
    if (r >> bit & 1) r ^= 0x11Du << (bit - 8);
  }
  return static_cast<std::uint8_t>(r);
}

QrErrc failure_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const QrError& e) {
    return e.code();
  }
  FAIL("expected a QrError");
  return QrErrc::DivisionByZero;
}

Bytes random_bytes(testing::Rng& rng, int n) {
  Bytes b(static_cast<std::size_t>(n));
  for (auto& x : b) x = static_cast<std::uint8_t>(testing::uniform(rng, 0, 255));
  return b;
}

Bytes with_parity(const Bytes& data, int ec) {
  Bytes cw = data;
  const auto parity = rs_encode(data, ec);
  cw.insert(cw.end(), parity.begin(), parity.end());
  return cw;
}

void corrupt(testing::Rng& rng, Bytes& cw, int errors) {
  std::set<int> positions;
  while (static_cast<int>(positions.size()) < errors) positions.insert(testing::uniform(rng, 0, static_cast<int>(cw.size()) - 1));
  for (int p : positions) cw[static_cast<std::size_t>(p)] ^= static_cast<std::uint8_t>(testing::uniform(rng, 1, 255));
}

}  // namespace

TEST_SUITE("gf256") {
  TEST_CASE("multiplication matches shift-and-reduce on all pairs") {
    for (int a = 0; a < 256; ++a) {
      for (int b = 0; b < 256; ++b) {
        REQUIRE(gf_mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)) ==
                slow_mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)));
      }
    }
  }

  TEST_CASE("field axioms") {
    for (int a = 1; a < 256; ++a) {
      const auto x = static_cast<std::uint8_t>(a);
      CHECK(gf_mul(x, gf_inv(x)) == 1);
      CHECK(gf_exp(gf_log(x)) == x);
      for (int b = 1; b < 256; b += 7) {
        const auto y = static_cast<std::uint8_t>(b);
        CHECK(gf_div(gf_mul(x, y), y) == x);
      }
    }
    CHECK(gf_pow(0, 0) == 1);
    CHECK(gf_pow(2, 8) == 0x1D);
    CHECK(gf_pow(2, 255) == 1);
    CHECK(gf_exp(255) == 1);
  }

  TEST_CASE("2 generates the multiplicative group") {
    std::set<int> seen;
    for (int k = 0; k < 255; ++k) seen.insert(gf_exp(k));
    CHECK(seen.size() == 255);
    CHECK(seen.count(0) == 0);
  }

  TEST_CASE("division and inversion by zero") {
    CHECK(failure_of([] { gf_div(5, 0); }) == QrErrc::DivisionByZero);
    CHECK(failure_of([] { gf_inv(0); }) == QrErrc::DivisionByZero);
    CHECK(failure_of([] { gf_log(0); }) == QrErrc::DivisionByZero);
  }
}

TEST_SUITE("reed_solomon") {
  TEST_CASE("generator polynomials match the product of linear factors") {
    for (int ec = 1; ec <= kMaxEcLength; ++ec) {
      Bytes g{1};
      for (int i = 0; i < ec; ++i) {
        Bytes next(g.size() + 1, 0);
        for (std::size_t k = 0; k < g.size(); ++k) {
          next[k] ^= g[k];
          next[k + 1] ^= slow_mul(g[k], gf_exp(i));
        }
        g = next;
      }
      CHECK(rs_generator(ec) == g);
    }
  }

  TEST_CASE("generator polynomials for the QR block shapes") {
    const auto logs = [](const Bytes& g) {
      std::vector<int> out;
      for (auto c : g) out.push_back(gf_log(c));
      return out;
    };
    CHECK(logs(rs_generator(7)) == std::vector<int>{0, 87, 229, 146, 149, 238, 102, 21});
    CHECK(logs(rs_generator(10)) == std::vector<int>{0, 251, 67, 46, 61, 118, 70, 64, 94, 32, 45});
    CHECK(logs(rs_generator(16)) ==
          std::vector<int>{0, 120, 104, 107, 109, 102, 161, 76, 3, 91, 191, 147, 169, 182, 194, 225, 120});
  }

  TEST_CASE("parity of a known version-1-M block") {
    const Bytes data{32, 91, 11, 120, 209, 114, 220, 77, 67, 64, 236, 17, 236, 17, 236, 17};
    CHECK(rs_encode(data, 10) == Bytes{196, 35, 39, 119, 235, 215, 231, 226, 93, 23});
  }

  TEST_CASE("zero data gives zero parity and codewords have zero syndromes") {
    CHECK(rs_encode(Bytes(19, 0), 7) == Bytes(7, 0));
    testing::Rng rng(1);
    for (int trial = 0; trial < 200; ++trial) {
      const int ec = testing::uniform(rng, 1, kMaxEcLength);
      const auto data = random_bytes(rng, testing::uniform(rng, 1, 255 - ec));
      CHECK(rs_syndromes(with_parity(data, ec), ec) == Bytes(static_cast<std::size_t>(ec), 0));
    }
  }

  TEST_CASE("argument checks") {
    CHECK(failure_of([] { rs_encode(Bytes{1}, 0); }) == QrErrc::BadEcLength);
    CHECK(failure_of([] { rs_encode(Bytes{1}, 31); }) == QrErrc::BadEcLength);
    CHECK(failure_of([] { rs_encode(Bytes(250, 1), 10); }) == QrErrc::BadEcLength);
    CHECK(failure_of([] { rs_encode(Bytes{}, 4); }) == QrErrc::BadEcLength);
  }

  TEST_CASE("clean codeword") {
    testing::Rng rng(2);
    const auto data = random_bytes(rng, 19);
    const auto r = rs_correct(with_parity(data, 7), 7);
    CHECK(r.data == data);
    CHECK(r.corrected == 0);
  }

  TEST_CASE("single error at every position and several values") {
    testing::Rng rng(3);
    const auto data = random_bytes(rng, 19);
    const auto cw = with_parity(data, 7);
    for (std::size_t pos = 0; pos < cw.size(); ++pos) {
      for (int v : {1, 0x80, 0xFF, 0x5A}) {
        auto bad = cw;
        bad[pos] ^= static_cast<std::uint8_t>(v);
        const auto r = rs_correct(bad, 7);
        CHECK(r.data == data);
        CHECK(r.corrected == 1);
      }
    }
  }

  TEST_CASE("up to t errors are corrected") {
    testing::Rng rng(4);
    for (int ec : {7, 10, 15, 16, 26}) {
      for (int trial = 0; trial < 100; ++trial) {
        const auto data = random_bytes(rng, 44);
        auto cw = with_parity(data, ec);
        const int e = testing::uniform(rng, 0, ec / 2);
        corrupt(rng, cw, e);
        const auto r = rs_correct(cw, ec);
        CHECK(r.data == data);
        CHECK(r.corrected == e);
      }
    }
  }

  TEST_CASE("t+1 errors are refused or, rarely, decoded to a different valid codeword") {
    testing::Rng rng(5);
    int refused = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const auto data = random_bytes(rng, 19);
      auto cw = with_parity(data, 7);
      corrupt(rng, cw, 4);
      try {
        const auto r = rs_correct(cw, 7);
        // Anything returned must be a genuine codeword within t of the input.
        CHECK(r.data != data);
        CHECK(rs_syndromes(with_parity(r.data, 7), 7) == Bytes(7, 0));
        CHECK(r.corrected <= 3);
      } catch (const QrError& e) {
        CHECK(e.code() == QrErrc::Uncorrectable);
        ++refused;
      }
    }
    CHECK(refused >= 290);
  }

  TEST_CASE("full-length codes") {
    testing::Rng rng(6);
    const auto data = random_bytes(rng, 255 - 30);
    auto cw = with_parity(data, 30);
    corrupt(rng, cw, 15);
    CHECK(rs_correct(cw, 30).data == data);
  }
}
