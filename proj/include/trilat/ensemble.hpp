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

#include <span>
#include <vector>

#include "trilat/rng.hpp"
#include "trilat/types.hpp"

namespace trilat {

/// A probability assignment over a finite state-index space. Immutable value;
/// operations return fresh ensembles.
struct Ensemble {
  std::vector<double> probabilities;

  std::size_t size() const { return probabilities.size(); }
};

/// Validating constructor: entries nonnegative, sum within kProbabilitySumTol
/// of one, size within the dense cap.
Ensemble make_ensemble(std::vector<double> probabilities);

/// Delta distribution at index m.
Ensemble point_ensemble(StateIndex m, std::size_t size);

/// P_m = 1/size for every m.
Ensemble uniform_ensemble(std::size_t size);

/// Push-forward through a bijection of the index space: out[map[m]] = P_m.
/// A non-bijective table (duplicate image) is rejected.
Ensemble push_forward(const Ensemble& e, std::span<const StateIndex> map);

/// Draw an index with probability P_m by inverse CDF over the index order.
StateIndex sample(const Ensemble& e, SeededRng& rng);

/// Snap each probability to the grid {0, 1/(K-1), ..., 1} and renormalize
/// exactly onto that grid (largest-remainder apportionment of K-1 quanta).
/// Errors if plain rounding would zero every entry (K too coarse).
Ensemble quantize(const Ensemble& e, int k_levels);

}  // namespace trilat
