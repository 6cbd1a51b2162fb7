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

#include "trilat/amplitudes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

#include "trilat/kernels.hpp"

namespace trilat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_phase(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

std::vector<double> squared_moduli(const AmplitudeVector& a) {
  std::vector<double> out(a.size());
  kernels::active::squared(a.moduli, out);
  return out;
}

}  // namespace

AmplitudeVector make_amplitudes(std::vector<double> moduli, std::vector<double> phases) {
  if (moduli.empty()) throw InvariantError("amplitude vector must be nonempty");
  if (moduli.size() != phases.size())
    throw std::invalid_argument("moduli and phases must have equal length");
  if (moduli.size() > kDenseStateCap)
    throw CapError("amplitude vector over " + std::to_string(moduli.size()) +
                   " states exceeds cap " + std::to_string(kDenseStateCap));
  for (double r : moduli) {
    if (!(r >= 0.0)) throw InvariantError("modulus must be nonnegative");
  }
  for (double& t : phases) t = reduce_phase(t);
  AmplitudeVector a{std::move(moduli), std::move(phases)};
  const double norm = squared_norm(a);
  if (std::fabs(norm - 1.0) > kAmplitudeNormTol)
    throw InvariantError("amplitude norm " + std::to_string(norm) +
                         " departs from 1 beyond tolerance");
  return a;
}

Partition make_partition(std::vector<std::uint32_t> assignment, std::uint32_t n_blocks) {
  if (assignment.empty()) throw InvariantError("partition must cover a nonempty space");
  if (n_blocks == 0) throw InvariantError("partition needs at least one block");
  for (std::uint32_t b : assignment) {
    if (b >= n_blocks) throw InvariantError("partition assignment out of block range");
  }
  return Partition{std::move(assignment), n_blocks};
}

BranchSet make_branch_set(std::vector<Branch> branches, std::optional<Partition> refines) {
  if (branches.empty()) throw InvariantError("branch set must be nonempty");
  if (branches.size() > kBranchCap)
    throw CapError("branch set of " + std::to_string(branches.size()) +
                   " branches exceeds cap " + std::to_string(kBranchCap));
  std::unordered_set<std::string> labels;
  double norm = 0.0;
  for (const Branch& br : branches) {
    if (!labels.insert(br.label).second)
      throw InvariantError("duplicate branch label: " + br.label);
    norm += std::norm(br.weight);
  }
  if (std::fabs(norm - 1.0) > kAmplitudeNormTol)
    throw InvariantError("branch weights norm " + std::to_string(norm) +
                         " departs from 1 beyond tolerance");
  return BranchSet{std::move(branches), std::move(refines)};
}

double squared_norm(const AmplitudeVector& a) {
  return kernels::active::block_sum(squared_moduli(a));
}

AmplitudeVector lift(const Ensemble& e, std::span<const double> initial_phases) {
  if (initial_phases.size() != e.size())
    throw std::invalid_argument("lift: phase array length mismatch");
  std::vector<double> moduli(e.size());
  for (std::size_t m = 0; m < e.size(); ++m) moduli[m] = std::sqrt(e.probabilities[m]);
  return make_amplitudes(std::move(moduli),
                         std::vector<double>(initial_phases.begin(), initial_phases.end()));
}

Ensemble probabilities(const AmplitudeVector& a) {
  std::vector<double> p = squared_moduli(a);
  const double total = kernels::active::block_sum(p);
  if (total <= 0.0) throw InvariantError("probabilities: zero total weight");
  for (double& x : p) x /= total;
  return make_ensemble(std::move(p));
}

AmplitudeVector unitary_step(const AmplitudeVector& a, const LatticeConfig& cfg) {
  const auto perm = step_permutation(cfg);
  const auto energy = energy_table(cfg);
  return unitary_step(a, perm, energy, cfg.phase_rate);
}

AmplitudeVector unitary_step(const AmplitudeVector& a, std::span<const StateIndex> perm,
                             std::span<const double> energy, double phase_rate) {
  if (perm.size() != a.size())
    throw std::invalid_argument("unitary_step: permutation size mismatch");
  AmplitudeVector out;
  out.moduli.resize(a.size());
  out.phases.resize(a.size());
  kernels::active::permute_phase(a.moduli, a.phases, perm, energy, phase_rate,
                                 out.moduli, out.phases);
  return out;
}

std::pair<StateIndex, AmplitudeVector> collapse_full(const AmplitudeVector& a,
                                                     SeededRng& rng) {
  const std::vector<double> weights = squared_moduli(a);
  const std::size_t m = sample_weighted_index(weights, rng.next_unit());
  AmplitudeVector post;
  post.moduli.assign(a.size(), 0.0);
  post.phases.assign(a.size(), 0.0);
  post.moduli[m] = 1.0;
  post.phases[m] = a.phases[m];
  return {static_cast<StateIndex>(m), std::move(post)};
}

AmplitudeVector project_block(const AmplitudeVector& a, const Partition& p,
                              std::uint32_t block) {
  if (p.size() != a.size())
    throw std::invalid_argument("project_block: partition size mismatch");
  if (block >= p.n_blocks) throw std::out_of_range("project_block: no such block");
  double block_weight = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (p.assignment[m] == block) block_weight += a.moduli[m] * a.moduli[m];
  }
  if (block_weight <= 0.0)
    throw InvariantError("project_block: block carries no weight");
  const double scale = 1.0 / std::sqrt(block_weight);
  AmplitudeVector post;
  post.moduli.assign(a.size(), 0.0);
  post.phases.assign(a.size(), 0.0);
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (p.assignment[m] == block) {
      post.moduli[m] = a.moduli[m] * scale;
      post.phases[m] = a.phases[m];
    }
  }
  return post;
}

std::pair<std::uint32_t, AmplitudeVector> collapse_partition(const AmplitudeVector& a,
                                                             const Partition& p,
                                                             SeededRng& rng) {
  if (p.size() != a.size())
    throw std::invalid_argument("collapse_partition: partition size mismatch");
  const std::vector<double> weights =
      kernels::active::partition_weights(a.moduli, p.assignment, p.n_blocks);
  const std::uint32_t block =
      static_cast<std::uint32_t>(sample_weighted_index(weights, rng.next_unit()));
  return {block, project_block(a, p, block)};
}

Partition site_value_partition(const LatticeConfig& cfg, StateIndex space_size,
                               int site, int field) {
  if (site < 0 || site >= cfg.n_sites) throw std::out_of_range("site out of range");
  if (field < 0 || field >= cfg.n_fields) throw std::out_of_range("field out of range");
  const StateIndex count = configuration_count(cfg);
  const bool dynamical = space_size != count;
  if (dynamical && space_size != dynamical_state_count(cfg))
    throw std::invalid_argument("space size matches neither index space of this config");

  const int slot = site * cfg.n_fields + field;
  // The slot's digit has period base^slot in the configuration index.
  const StateIndex stride = checked_pow(static_cast<StateIndex>(cfg.base()),
                                        static_cast<StateIndex>(slot));
  std::vector<std::uint32_t> assignment(space_size);
  for (StateIndex m = 0; m < space_size; ++m) {
    const StateIndex config_index = dynamical ? m % count : m;
    assignment[m] = static_cast<std::uint32_t>(
        (config_index / stride) % static_cast<StateIndex>(cfg.base()));
  }
  return make_partition(std::move(assignment), static_cast<std::uint32_t>(cfg.base()));
}

std::pair<int, AmplitudeVector> collapse_site(const AmplitudeVector& a, int site,
                                              int field, const LatticeConfig& cfg,
                                              SeededRng& rng) {
  const Partition p =
      site_value_partition(cfg, static_cast<StateIndex>(a.size()), site, field);
  auto [block, post] = collapse_partition(a, p, rng);
  return {static_cast<int>(block) - cfg.half_range, std::move(post)};
}

std::vector<std::pair<std::uint32_t, double>> branch_weights(const AmplitudeVector& a,
                                                             const Partition& p) {
  if (p.size() != a.size())
    throw std::invalid_argument("branch_weights: partition size mismatch");
  const std::vector<double> weights =
      kernels::active::partition_weights(a.moduli, p.assignment, p.n_blocks);
  std::vector<std::pair<std::uint32_t, double>> out;
  out.reserve(weights.size());
  for (std::uint32_t b = 0; b < p.n_blocks; ++b) out.emplace_back(b, weights[b]);
  return out;
}

std::pair<std::string, BranchSet> sparse_collapse(const BranchSet& b, SeededRng& rng) {
  if (b.branches.empty()) throw InvariantError("sparse_collapse: empty branch set");
  std::vector<double> weights(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) weights[i] = std::norm(b.branches[i].weight);
  const std::size_t chosen = sample_weighted_index(weights, rng.next_unit());
  const Branch& winner = b.branches[chosen];
  // The jump shifts the surviving weight to unity; the branch phase rides along.
  std::complex<double> unit_weight{1.0, 0.0};
  const double mag = std::abs(winner.weight);
  if (mag > 0.0) unit_weight = winner.weight / mag;
  BranchSet post;
  post.branches.push_back(Branch{winner.label, unit_weight});
  post.refines = b.refines;
  return {winner.label, std::move(post)};
}

BranchSet branch_set_from_partition(const AmplitudeVector& a, const Partition& p,
                                    std::span<const std::string> labels) {
  if (labels.size() != p.n_blocks)
    throw std::invalid_argument("branch_set_from_partition: one label per block required");
  const std::vector<double> weights =
      kernels::active::partition_weights(a.moduli, p.assignment, p.n_blocks);
  std::vector<Branch> branches;
  branches.reserve(p.n_blocks);
  for (std::uint32_t b = 0; b < p.n_blocks; ++b)
    branches.push_back(Branch{labels[b], {std::sqrt(weights[b]), 0.0}});
  return make_branch_set(std::move(branches), p);
}

}  // namespace trilat
