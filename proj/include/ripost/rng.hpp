// Copyright 2026 The ripost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ripost {

/// Incremental 64-bit FNV-1a; used to derive RNG substreams and digests.
class Hash64 {
 public:
  Hash64& mix(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (v >> (8 * i)) & 0xff;
      state_ *= 0x100000001b3ull;
    }
    return *this;
  }
  Hash64& mix_bytes(std::span<const char> bytes) {
    for (char c : bytes) {
      state_ ^= static_cast<unsigned char>(c);
      state_ *= 0x100000001b3ull;
    }
    return *this;
  }
  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

/// Deterministic random stream: identical (seed, substream) produce the
/// identical sample sequence regardless of thread schedule or platform.
/// Substream ids are derived from structural inputs (block cut paths, query
/// indices) so randomness is independent of traversal order.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t substream);

  /// Uniform in [0, 1) with 53 random bits.
  double next_uniform();

  /// Uniform in (0, 1): never returns 0, safe for log().
  double next_uniform_open();

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ripost
