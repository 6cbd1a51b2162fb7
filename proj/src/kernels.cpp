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

#include "trilat/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trilat::kernels {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_phase(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod can round exactly onto 2*pi after the correction
  if (t >= kTwoPi) t = 0.0;
  return t;
}

void check_permute_args(std::size_t n, std::span<const double> phases,
                        std::span<const StateIndex> perm,
                        std::span<const double> energy,
                        std::span<double> moduli_out,
                        std::span<double> phases_out) {
  if (phases.size() != n || perm.size() != n || energy.size() != n ||
      moduli_out.size() != n || phases_out.size() != n)
    throw std::invalid_argument("permute_phase: size mismatch");
}

}  // namespace

namespace serial {

void permute_phase(std::span<const double> moduli, std::span<const double> phases,
                   std::span<const StateIndex> perm, std::span<const double> energy,
                   double rate, std::span<double> moduli_out,
                   std::span<double> phases_out) {
  const std::size_t n = moduli.size();
  check_permute_args(n, phases, perm, energy, moduli_out, phases_out);
  for (std::size_t m = 0; m < n; ++m) {
    const StateIndex dst = perm[m];
    moduli_out[dst] = moduli[m];
    phases_out[dst] = reduce_phase(phases[m] + rate * energy[m]);
  }
}

void squared(std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size()) throw std::invalid_argument("squared: size mismatch");
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] * in[i];
}

double block_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  const std::size_t n_blocks = (n + kSumBlock - 1) / kSumBlock;
  double total = 0.0;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    const std::size_t lo = b * kSumBlock;
    const std::size_t hi = std::min(n, lo + kSumBlock);
    double partial = 0.0;
    for (std::size_t i = lo; i < hi; ++i) partial += xs[i];
    total += partial;
  }
  return total;
}

void scatter(std::span<const double> in, std::span<const StateIndex> perm,
             std::span<double> out) {
  if (in.size() != perm.size() || in.size() != out.size())
    throw std::invalid_argument("scatter: size mismatch");
  for (std::size_t m = 0; m < in.size(); ++m) out[perm[m]] = in[m];
}

std::vector<double> partition_weights(std::span<const double> moduli,
                                      std::span<const std::uint32_t> labels,
                                      std::uint32_t n_blocks) {
  if (moduli.size() != labels.size())
    throw std::invalid_argument("partition_weights: size mismatch");
  const std::size_t n = moduli.size();
  const std::size_t chunks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> weights(n_blocks, 0.0);
  std::vector<double> partial(n_blocks);
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t lo = c * kSumBlock;
    const std::size_t hi = std::min(n, lo + kSumBlock);
    std::fill(partial.begin(), partial.end(), 0.0);
    for (std::size_t i = lo; i < hi; ++i) {
      if (labels[i] >= n_blocks)
        throw InvariantError("partition label out of range");
      partial[labels[i]] += moduli[i] * moduli[i];
    }
    for (std::uint32_t b = 0; b < n_blocks; ++b) weights[b] += partial[b];
  }
  return weights;
}

}  // namespace serial

namespace parallel {

void permute_phase(std::span<const double> moduli, std::span<const double> phases,
                   std::span<const StateIndex> perm, std::span<const double> energy,
                   double rate, std::span<double> moduli_out,
                   std::span<double> phases_out) {
  const std::size_t n = moduli.size();
  check_permute_args(n, phases, perm, energy, moduli_out, phases_out);
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t m = 0; m < sn; ++m) {
    const StateIndex dst = perm[m];
    moduli_out[dst] = moduli[m];
    phases_out[dst] = reduce_phase(phases[m] + rate * energy[m]);
  }
}

void squared(std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size()) throw std::invalid_argument("squared: size mismatch");
  const std::int64_t n = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = in[i] * in[i];
}

double block_sum(std::span<const double> xs) {
  const std::size_t n = xs.size();
  const std::size_t n_blocks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partials(n_blocks, 0.0);
  const std::int64_t nb = static_cast<std::int64_t>(n_blocks);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
    const std::size_t hi = std::min(n, lo + kSumBlock);
    double partial = 0.0;
    for (std::size_t i = lo; i < hi; ++i) partial += xs[i];
    partials[b] = partial;
  }
  // Fixed-order final summation keeps the result independent of thread count.
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

void scatter(std::span<const double> in, std::span<const StateIndex> perm,
             std::span<double> out) {
  if (in.size() != perm.size() || in.size() != out.size())
    throw std::invalid_argument("scatter: size mismatch");
  const std::int64_t n = static_cast<std::int64_t>(in.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t m = 0; m < n; ++m) out[perm[m]] = in[m];
}

std::vector<double> partition_weights(std::span<const double> moduli,
                                      std::span<const std::uint32_t> labels,
                                      std::uint32_t n_blocks) {
  if (moduli.size() != labels.size())
    throw std::invalid_argument("partition_weights: size mismatch");
  if (n_blocks > kMaxParallelLabels)
    return serial::partition_weights(moduli, labels, n_blocks);
  const std::size_t n = moduli.size();
  const std::size_t chunks = (n + kSumBlock - 1) / kSumBlock;
  std::vector<double> partials(chunks * n_blocks, 0.0);
  bool bad_label = false;
  const std::int64_t nc = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < nc; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kSumBlock;
    const std::size_t hi = std::min(n, lo + kSumBlock);
    double* chunk = partials.data() + static_cast<std::size_t>(c) * n_blocks;
    for (std::size_t i = lo; i < hi; ++i) {
      if (labels[i] >= n_blocks) {
        bad_label = true;
        continue;
      }
      chunk[labels[i]] += moduli[i] * moduli[i];
    }
  }
  if (bad_label) throw InvariantError("partition label out of range");
  std::vector<double> weights(n_blocks, 0.0);
  for (std::size_t c = 0; c < chunks; ++c)
    for (std::uint32_t b = 0; b < n_blocks; ++b)
      weights[b] += partials[c * n_blocks + b];
  return weights;
}

}  // namespace parallel

}  // namespace trilat::kernels
