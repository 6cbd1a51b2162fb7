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
#include <vector>

#include "trilat/types.hpp"

namespace trilat {

/// Parameters of the lattice system: a 1-D periodic ring of `n_sites` sites,
/// each carrying `n_fields` integer fields valued in [-half_range, +half_range].
///
/// Validation happens in `make`; a config whose single-time state count
/// does not fit 64 bits is rejected at construction.
struct LatticeConfig {
  int n_sites = 1;
  int n_fields = 1;
  int half_range = 0;
  int n_timesteps = 1;
  int neighbor_radius = 1;
  double phase_rate = 0.0;

  static LatticeConfig make(int n_sites, int n_fields, int half_range,
                            int n_timesteps = 1, int neighbor_radius = 1,
                            double phase_rate = 0.0);

  int base() const { return 2 * half_range + 1; }
  int n_slots() const { return n_sites * n_fields; }
};

/// One complete assignment of all fields at all sites. Values are stored
/// site-major: slot(site i, field j) = i * n_fields + j.
struct FieldConfiguration {
  std::vector<std::int32_t> values;

  bool operator==(const FieldConfiguration&) const = default;
};

/// The unit evolved by the classical dynamics: the field configuration now and
/// one step earlier (the update rule is second order in time).
struct DynamicalState {
  FieldConfiguration current;
  FieldConfiguration previous;

  bool operator==(const DynamicalState&) const = default;
};

/// Register bookkeeping for the three descriptions of one lattice system.
struct RegisterReport {
  StateIndex classical_registers = 0;
  StateIndex classical_register_capacity = 0;
  StateIndex statistical_registers = 0;
  StateIndex quantum_registers = 0;

  bool operator==(const RegisterReport&) const = default;
};

/// b^e with overflow detection; throws CapError on 64-bit overflow.
StateIndex checked_pow(StateIndex b, StateIndex e);

/// Number of single-time field configurations: base^(n_fields * n_sites).
StateIndex configuration_count(const LatticeConfig& cfg);

/// Number of (current, previous) pairs: configuration_count squared.
/// Throws CapError if the square does not fit 64 bits.
StateIndex dynamical_state_count(const LatticeConfig& cfg);

/// Register counts for the classical, statistical and quantum descriptions.
RegisterReport register_accounting(const LatticeConfig& cfg);

FieldConfiguration zero_configuration(const LatticeConfig& cfg);
void validate_configuration(const FieldConfiguration& c, const LatticeConfig& cfg);

/// Little-endian mixed-radix index of a configuration; digit k is
/// values[k] + half_range. Bijective onto [0, configuration_count).
StateIndex encode(const FieldConfiguration& c, const LatticeConfig& cfg);

/// Index of a dynamical state: encode(current) + encode(previous) * count.
StateIndex encode(const DynamicalState& s, const LatticeConfig& cfg);

/// Inverses of the two encodings; throw std::out_of_range for indices
/// beyond the relevant count.
FieldConfiguration decode_configuration(StateIndex m, const LatticeConfig& cfg);
DynamicalState decode_dynamical(StateIndex m, const LatticeConfig& cfg);

/// One step of the reversible classical rule:
///   next.current[i,j] = (sum of current[i',j] over the radius-r ring
///                        neighborhood of i) - previous[i,j],
/// reduced into [-L, +L] modulo base; next.previous = current.
DynamicalState step_classical(const DynamicalState& s, const LatticeConfig& cfg);

/// Exact inverse of step_classical.
DynamicalState step_backward(const DynamicalState& s, const LatticeConfig& cfg);

/// Trajectory [initial, step(initial), ...] of length steps + 1.
std::vector<DynamicalState> evolve_classical(const DynamicalState& initial,
                                             const LatticeConfig& cfg, int steps);

/// The classical step as a permutation table over all dynamical-state
/// indices. Dense: requires dynamical_state_count <= kDenseStateCap.
std::vector<StateIndex> step_permutation(const LatticeConfig& cfg);

/// Sum over ring-adjacent site pairs of squared field differences.
double state_energy(const FieldConfiguration& c, const LatticeConfig& cfg);

/// state_energy of the current configuration of every dynamical state.
/// Dense: requires dynamical_state_count <= kDenseStateCap.
std::vector<double> energy_table(const LatticeConfig& cfg);

}  // namespace trilat
