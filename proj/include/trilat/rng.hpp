/*
 * Copyright (c) 2026 The trilat developers.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace trilat {

/// Per-stream seed derivation: stream k of a master seed is output k+1 of the
/// splitmix64 sequence started at the master seed. Streams are independent of
/// execution order, so trials keyed by index can run in any order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// Seedable random source. Draws use raw mt19937_64 words only; the standard
/// distribution adaptors are avoided because their output sequences differ
/// across library implementations.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias.
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

/// Inverse-CDF draw over nonnegative weights in index order: returns the first
/// index whose cumulative weight exceeds u * total(weights). Zero-weight
/// indices are never returned. `weights` need not be normalized.
std::size_t sample_weighted_index(std::span<const double> weights, double unit_draw);

}  // namespace trilat
