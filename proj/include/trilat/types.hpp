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
#include <stdexcept>

namespace trilat {

/// Index enumerating one complete assignment of all fields at all sites
/// (or a (current, previous) pair of such assignments).
using StateIndex = std::uint64_t;

/// Dense vectors over a state space refuse to allocate beyond this size.
inline constexpr StateIndex kDenseStateCap = 1'000'000;

/// Sparse branch sets refuse to split beyond this many branches.
inline constexpr std::size_t kBranchCap = 1'000'000;

/// Tolerance for probability-vector normalization.
inline constexpr double kProbabilitySumTol = 1e-12;

/// Tolerance for amplitude-vector norm (sum of squared moduli).
inline constexpr double kAmplitudeNormTol = 1e-10;

/// Invalid configuration values or malformed input documents.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A requested representation exceeds a hard resource cap.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value-type invariant was violated at a module boundary.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace trilat
