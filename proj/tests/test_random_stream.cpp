// Copyright 2026 The dualstat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <concepts>
#include <random>
#include <set>

#include "dualstat/random_stream.hpp"

namespace dualstat {
namespace {

using Block = std::array<std::uint32_t, 4>;

// Published Philox4x32-10 known-answer vectors.
TEST(Philox, KnownAnswers) {
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
            (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                          {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                          {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(CounterStream, ReplaysIdentically) {
  CounterStream a(42, 3);
  CounterStream b(42, 3);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  EXPECT_EQ(a.draws(), 1000u);
}

TEST(CounterStream, StreamsAndSeedsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed : {0ull, 1ull, 0x100000000ull}) {
    for (std::uint64_t index : {0ull, 1ull, 0x100000000ull}) {
      firsts.insert(CounterStream(seed, index).next_u64());
    }
  }
  EXPECT_EQ(firsts.size(), 9u);
}

TEST(CounterStream, UniformRanges) {
  CounterStream s(7, 0);
  double sum = 0.0;
  constexpr int kDraws = 200000;
  for (int i = 0; i < kDraws; ++i) {
    const double u = s.next_uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = s.next_open_uniform();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
    sum += u;
  }
  // Mean of U(0,1) has standard error 1/sqrt(12 N).
  EXPECT_NEAR(sum / kDraws, 0.5, 5.0 / std::sqrt(12.0 * kDraws));
}

TEST(CounterStream, SatisfiesUniformRandomBitGenerator) {
  static_assert(std::uniform_random_bit_generator<CounterStream>);
  CounterStream s(1, 1);
  std::uniform_int_distribution<int> die(1, 6);
  const int roll = die(s);
  EXPECT_GE(roll, 1);
  EXPECT_LE(roll, 6);
}

}  // namespace
}  // namespace dualstat
