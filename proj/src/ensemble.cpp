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

#include "trilat/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "trilat/kernels.hpp"

namespace trilat {

Ensemble make_ensemble(std::vector<double> probabilities) {
  if (probabilities.empty()) throw InvariantError("ensemble must be nonempty");
  if (probabilities.size() > kDenseStateCap)
    throw CapError("ensemble over " + std::to_string(probabilities.size()) +
                   " states exceeds cap " + std::to_string(kDenseStateCap));
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw InvariantError("ensemble probability must be nonnegative");
  }
  const double total = kernels::active::block_sum(probabilities);
  if (std::fabs(total - 1.0) > kProbabilitySumTol)
    throw InvariantError("ensemble mass " + std::to_string(total) +
                         " departs from 1 beyond tolerance");
  return Ensemble{std::move(probabilities)};
}

Ensemble point_ensemble(StateIndex m, std::size_t size) {
  if (m >= size)
    throw std::out_of_range("point_ensemble: index " + std::to_string(m) +
                            " >= size " + std::to_string(size));
  std::vector<double> p(size, 0.0);
  p[m] = 1.0;
  return make_ensemble(std::move(p));
}

Ensemble uniform_ensemble(std::size_t size) {
  if (size == 0) throw std::invalid_argument("uniform_ensemble: size must be positive");
  return make_ensemble(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

Ensemble push_forward(const Ensemble& e, std::span<const StateIndex> map) {
  const std::size_t n = e.size();
  if (map.size() != n) throw std::invalid_argument("push_forward: map size mismatch");
  std::vector<char> seen(n, 0);
  for (StateIndex target : map) {
    if (target >= n) throw InvariantError("push_forward: image out of range");
    if (seen[target]) throw InvariantError("push_forward: duplicate image, map is not a bijection");
    seen[target] = 1;
  }
  std::vector<double> out(n);
  kernels::active::scatter(e.probabilities, map, out);
  return Ensemble{std::move(out)};  // mass moved verbatim, already validated
}

StateIndex sample(const Ensemble& e, SeededRng& rng) {
  return static_cast<StateIndex>(sample_weighted_index(e.probabilities, rng.next_unit()));
}

Ensemble quantize(const Ensemble& e, int k_levels) {
  if (k_levels < 2) throw std::invalid_argument("quantize: need at least 2 levels");
  const double grid = static_cast<double>(k_levels - 1);

  // K too coarse: plain nearest-multiple rounding would erase all mass.
  bool any_nonzero = false;
  for (double p : e.probabilities) {
    if (std::round(p * grid) > 0.0) {
      any_nonzero = true;
      break;
    }
  }
  if (!any_nonzero)
    throw InvariantError("quantize: all probabilities round to zero at K = " +
                         std::to_string(k_levels));

  // Apportion K-1 quanta by largest remainder; output lands exactly on the
  // level grid with total mass exactly one, which also makes the operation
  // idempotent.
  const std::size_t n = e.size();
  std::vector<long long> quanta(n);
  std::vector<double> remainder(n);
  long long assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double scaled = e.probabilities[i] * grid;
    quanta[i] = static_cast<long long>(std::floor(scaled));
    remainder[i] = scaled - std::floor(scaled);
    assigned += quanta[i];
  }
  long long missing = static_cast<long long>(grid) - assigned;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainder[a] > remainder[b];
  });
  for (std::size_t k = 0; missing > 0 && k < n; ++k) {
    quanta[order[k]] += 1;
    --missing;
  }

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = static_cast<double>(quanta[i]) / grid;
  return make_ensemble(std::move(out));
}

}  // namespace trilat
