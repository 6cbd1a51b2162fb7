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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trilat/ensemble.hpp"
#include "trilat/lattice.hpp"
#include "trilat/rng.hpp"
#include "trilat/types.hpp"

namespace trilat {

/// Dense amplitude assignment over a state-index space, stored as
/// (modulus, phase) pairs. Phases are kept reduced to [0, 2*pi).
struct AmplitudeVector {
  std::vector<double> moduli;
  std::vector<double> phases;

  std::size_t size() const { return moduli.size(); }
};

/// Total assignment of every state index to a block label.
struct Partition {
  std::vector<std::uint32_t> assignment;
  std::uint32_t n_blocks = 0;

  std::size_t size() const { return assignment.size(); }
};

/// One classically describable component of a superposition.
struct Branch {
  std::string label;
  std::complex<double> weight;
};

/// Sparse labeled superposition of classical branches; optionally records the
/// partition of the dense space it refines.
struct BranchSet {
  std::vector<Branch> branches;
  std::optional<Partition> refines;

  std::size_t size() const { return branches.size(); }
};

/// Validating constructors.
AmplitudeVector make_amplitudes(std::vector<double> moduli, std::vector<double> phases);
Partition make_partition(std::vector<std::uint32_t> assignment, std::uint32_t n_blocks);
BranchSet make_branch_set(std::vector<Branch> branches,
                          std::optional<Partition> refines = std::nullopt);

/// Norm of the squared moduli (should be 1 for a valid vector).
double squared_norm(const AmplitudeVector& a);

/// r_m = sqrt(P_m) with the given initial phases.
AmplitudeVector lift(const Ensemble& e, std::span<const double> initial_phases);

/// P_m = r_m^2 (normalized so the result satisfies the ensemble invariant).
Ensemble probabilities(const AmplitudeVector& a);

/// One step of norm-preserving evolution: the amplitude at m moves to the
/// classical successor of m and its phase advances by phase_rate * energy(m).
AmplitudeVector unitary_step(const AmplitudeVector& a, const LatticeConfig& cfg);

/// Kernel form for evolution loops: permutation and energy tables are
/// precomputed once (see step_permutation / energy_table).
AmplitudeVector unitary_step(const AmplitudeVector& a, std::span<const StateIndex> perm,
                             std::span<const double> energy, double phase_rate);

/// Full collapse: index m drawn with probability r_m^2; the post state is the
/// delta at m with m's phase preserved.
std::pair<StateIndex, AmplitudeVector> collapse_full(const AmplitudeVector& a,
                                                     SeededRng& rng);

/// Deterministic projection onto one partition block, renormalized within the
/// block with relative phases preserved. Errors if the block carries no weight.
AmplitudeVector project_block(const AmplitudeVector& a, const Partition& p,
                              std::uint32_t block);

/// Partition collapse: block drawn with probability equal to its total squared
/// modulus, then project_block.
std::pair<std::uint32_t, AmplitudeVector> collapse_partition(const AmplitudeVector& a,
                                                             const Partition& p,
                                                             SeededRng& rng);

/// Partition of the index space by the value of field `field` at site `site`
/// in the decoded current configuration. Accepts both index spaces: the
/// single-configuration space and the dynamical-pair space.
Partition site_value_partition(const LatticeConfig& cfg, StateIndex space_size,
                               int site, int field);

/// Projective measurement of one site's field value; delegates to
/// collapse_partition. Returns the observed value in [-L, +L].
std::pair<int, AmplitudeVector> collapse_site(const AmplitudeVector& a, int site,
                                              int field, const LatticeConfig& cfg,
                                              SeededRng& rng);

/// Squared-modulus weight of every partition block, labeled by block id.
std::vector<std::pair<std::uint32_t, double>> branch_weights(const AmplitudeVector& a,
                                                             const Partition& p);

/// Sparse collapse: branch drawn with probability |weight|^2; the post state
/// is the delta branch set on the drawn label.
std::pair<std::string, BranchSet> sparse_collapse(const BranchSet& b, SeededRng& rng);

/// Sparse view of a dense vector under a partition: one branch per block,
/// weight sqrt(block weight), recording the partition it refines.
BranchSet branch_set_from_partition(const AmplitudeVector& a, const Partition& p,
                                    std::span<const std::string> labels);

}  // namespace trilat
