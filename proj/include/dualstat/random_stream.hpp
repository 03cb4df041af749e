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

#ifndef DUALSTAT_RANDOM_STREAM_HPP_
#define DUALSTAT_RANDOM_STREAM_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace dualstat {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The key is the 64-bit seed and the upper
/// half of the 128-bit counter is the stream index, so streams for distinct
/// (seed, index) pairs never overlap and each is reproducible on its own.
///
/// Models UniformRandomBitGenerator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, std::uint64_t stream_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform();

  /// Uniform on (0, 1).
  double next_open_uniform();

  /// Number of 64-bit words drawn so far.
  std::uint64_t draws() const { return draws_; }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
  std::uint64_t draws_ = 0;
};

}  // namespace dualstat

#endif  // DUALSTAT_RANDOM_STREAM_HPP_
