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
#include <span>
#include <vector>

#include "trilat/types.hpp"

// Dense state-space kernels. Each kernel has a serial reference version and
// an OpenMP version; both must produce bit-identical output for any thread
// count. Scatter kernels achieve this because permutation targets are
// disjoint; reductions achieve it by accumulating fixed-size blocks and
// summing the block partials in index order.
namespace trilat::kernels {

inline constexpr std::size_t kSumBlock = 4096;

/// Labels above this bound fall back to the serial reduction path.
inline constexpr std::uint32_t kMaxParallelLabels = 256;

namespace serial {

/// out[perm[m]] = (moduli[m], phases[m] + rate * energy[m] mod 2*pi).
void permute_phase(std::span<const double> moduli, std::span<const double> phases,
                   std::span<const StateIndex> perm, std::span<const double> energy,
                   double rate, std::span<double> moduli_out,
                   std::span<double> phases_out);

/// out[i] = in[i]^2.
void squared(std::span<const double> in, std::span<double> out);

/// Sum with fixed-block accumulation order.
double block_sum(std::span<const double> xs);

/// out[perm[m]] = in[m].
void scatter(std::span<const double> in, std::span<const StateIndex> perm,
             std::span<double> out);

/// weights[labels[m]] += moduli[m]^2, accumulated in fixed block order.
std::vector<double> partition_weights(std::span<const double> moduli,
                                      std::span<const std::uint32_t> labels,
                                      std::uint32_t n_blocks);

}  // namespace serial

namespace parallel {

void permute_phase(std::span<const double> moduli, std::span<const double> phases,
                   std::span<const StateIndex> perm, std::span<const double> energy,
                   double rate, std::span<double> moduli_out,
                   std::span<double> phases_out);
void squared(std::span<const double> in, std::span<double> out);
double block_sum(std::span<const double> xs);
void scatter(std::span<const double> in, std::span<const StateIndex> perm,
             std::span<double> out);
std::vector<double> partition_weights(std::span<const double> moduli,
                                      std::span<const std::uint32_t> labels,
                                      std::uint32_t n_blocks);

}  // namespace parallel

// Default dispatch: the parallel versions when built with OpenMP, the serial
// reference otherwise. Results are identical either way.
#ifdef _OPENMP
namespace active = parallel;
#else
namespace active = serial;
#endif

}  // namespace trilat::kernels
