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

#include "trilat/lattice.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace trilat {

namespace {

// Reduce x into [-L, +L] modulo base = 2L + 1.
std::int32_t wrap_value(std::int64_t x, int half_range) {
  const std::int64_t base = 2 * static_cast<std::int64_t>(half_range) + 1;
  std::int64_t d = (x + half_range) % base;
  if (d < 0) d += base;
  return static_cast<std::int32_t>(d - half_range);
}

}  // namespace

LatticeConfig LatticeConfig::make(int n_sites, int n_fields, int half_range,
                                  int n_timesteps, int neighbor_radius,
                                  double phase_rate) {
  if (n_sites < 1) throw ConfigError("n_sites must be positive");
  if (n_fields < 1) throw ConfigError("n_fields must be positive");
  if (half_range < 0) throw ConfigError("half_range must be nonnegative");
  if (n_timesteps < 1) throw ConfigError("n_timesteps must be positive");
  if (neighbor_radius < 1) throw ConfigError("neighbor_radius must be positive");
  LatticeConfig cfg;
  cfg.n_sites = n_sites;
  cfg.n_fields = n_fields;
  cfg.half_range = half_range;
  cfg.n_timesteps = n_timesteps;
  cfg.neighbor_radius = neighbor_radius;
  cfg.phase_rate = phase_rate;
  configuration_count(cfg);  // fails construction on 64-bit overflow
  return cfg;
}

StateIndex checked_pow(StateIndex b, StateIndex e) {
  StateIndex result = 1;
  for (StateIndex i = 0; i < e; ++i) {
    if (b != 0 && result > std::numeric_limits<StateIndex>::max() / b)
      throw CapError("state count overflows 64-bit index: base " + std::to_string(b) +
                     " to the power " + std::to_string(e));
    result *= b;
  }
  return result;
}

StateIndex configuration_count(const LatticeConfig& cfg) {
  return checked_pow(static_cast<StateIndex>(cfg.base()),
                     static_cast<StateIndex>(cfg.n_slots()));
}

StateIndex dynamical_state_count(const LatticeConfig& cfg) {
  const StateIndex count = configuration_count(cfg);
  if (count > std::numeric_limits<StateIndex>::max() / count)
    throw CapError("dynamical state count overflows 64-bit index");
  return count * count;
}

RegisterReport register_accounting(const LatticeConfig& cfg) {
  RegisterReport report;
  report.classical_registers = static_cast<StateIndex>(cfg.n_slots());
  report.classical_register_capacity = static_cast<StateIndex>(cfg.base());
  report.statistical_registers = configuration_count(cfg);
  if (report.statistical_registers > std::numeric_limits<StateIndex>::max() / 2)
    throw CapError("quantum register count overflows 64-bit index");
  report.quantum_registers = 2 * report.statistical_registers;
  return report;
}

FieldConfiguration zero_configuration(const LatticeConfig& cfg) {
  return FieldConfiguration{std::vector<std::int32_t>(cfg.n_slots(), 0)};
}

void validate_configuration(const FieldConfiguration& c, const LatticeConfig& cfg) {
  if (c.values.size() != static_cast<std::size_t>(cfg.n_slots()))
    throw InvariantError("configuration has " + std::to_string(c.values.size()) +
                         " slots, config expects " + std::to_string(cfg.n_slots()));
  for (std::int32_t v : c.values) {
    if (v < -cfg.half_range || v > cfg.half_range)
      throw InvariantError("field value " + std::to_string(v) + " outside [-L, +L]");
  }
}

StateIndex encode(const FieldConfiguration& c, const LatticeConfig& cfg) {
  validate_configuration(c, cfg);
  const StateIndex base = static_cast<StateIndex>(cfg.base());
  StateIndex m = 0;
  StateIndex mul = 1;
  for (std::int32_t v : c.values) {
    m += static_cast<StateIndex>(v + cfg.half_range) * mul;
    mul *= base;
  }
  return m;
}

StateIndex encode(const DynamicalState& s, const LatticeConfig& cfg) {
  const StateIndex count = configuration_count(cfg);
  dynamical_state_count(cfg);  // overflow check
  return encode(s.current, cfg) + encode(s.previous, cfg) * count;
}

FieldConfiguration decode_configuration(StateIndex m, const LatticeConfig& cfg) {
  const StateIndex count = configuration_count(cfg);
  if (m >= count)
    throw std::out_of_range("configuration index " + std::to_string(m) +
                            " >= count " + std::to_string(count));
  const StateIndex base = static_cast<StateIndex>(cfg.base());
  FieldConfiguration c;
  c.values.resize(cfg.n_slots());
  for (int k = 0; k < cfg.n_slots(); ++k) {
    c.values[k] = static_cast<std::int32_t>(m % base) - cfg.half_range;
    m /= base;
  }
  return c;
}

DynamicalState decode_dynamical(StateIndex m, const LatticeConfig& cfg) {
  const StateIndex count = configuration_count(cfg);
  if (m >= dynamical_state_count(cfg))
    throw std::out_of_range("dynamical index " + std::to_string(m) + " out of range");
  return DynamicalState{decode_configuration(m % count, cfg),
                        decode_configuration(m / count, cfg)};
}

DynamicalState step_classical(const DynamicalState& s, const LatticeConfig& cfg) {
  validate_configuration(s.current, cfg);
  validate_configuration(s.previous, cfg);
  const int n = cfg.n_sites;
  const int m = cfg.n_fields;
  const int r = cfg.neighbor_radius;
  DynamicalState next;
  next.current.values.resize(cfg.n_slots());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      std::int64_t sum = 0;
      for (int d = -r; d <= r; ++d) {
        const int ii = ((i + d) % n + n) % n;
        sum += s.current.values[ii * m + j];
      }
      next.current.values[i * m + j] =
          wrap_value(sum - s.previous.values[i * m + j], cfg.half_range);
    }
  }
  next.previous = s.current;
  return next;
}

DynamicalState step_backward(const DynamicalState& s, const LatticeConfig& cfg) {
  validate_configuration(s.current, cfg);
  validate_configuration(s.previous, cfg);
  const int n = cfg.n_sites;
  const int m = cfg.n_fields;
  const int r = cfg.neighbor_radius;
  DynamicalState prior;
  prior.current = s.previous;
  prior.previous.values.resize(cfg.n_slots());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      std::int64_t sum = 0;
      for (int d = -r; d <= r; ++d) {
        const int ii = ((i + d) % n + n) % n;
        sum += s.previous.values[ii * m + j];
      }
      prior.previous.values[i * m + j] =
          wrap_value(sum - s.current.values[i * m + j], cfg.half_range);
    }
  }
  return prior;
}

std::vector<DynamicalState> evolve_classical(const DynamicalState& initial,
                                             const LatticeConfig& cfg, int steps) {
  if (steps < 0) throw std::invalid_argument("evolve_classical: steps must be nonnegative");
  std::vector<DynamicalState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps) + 1);
  trajectory.push_back(initial);
  for (int k = 0; k < steps; ++k)
    trajectory.push_back(step_classical(trajectory.back(), cfg));
  return trajectory;
}

std::vector<StateIndex> step_permutation(const LatticeConfig& cfg) {
  const StateIndex size = dynamical_state_count(cfg);
  if (size > kDenseStateCap)
    throw CapError("dense permutation over " + std::to_string(size) +
                   " states exceeds cap " + std::to_string(kDenseStateCap));
  std::vector<StateIndex> perm(size);
  for (StateIndex m = 0; m < size; ++m)
    perm[m] = encode(step_classical(decode_dynamical(m, cfg), cfg), cfg);
  return perm;
}

double state_energy(const FieldConfiguration& c, const LatticeConfig& cfg) {
  validate_configuration(c, cfg);
  const int n = cfg.n_sites;
  const int m = cfg.n_fields;
  double energy = 0.0;
  for (int i = 0; i < n; ++i) {
    const int next = (i + 1) % n;
    for (int j = 0; j < m; ++j) {
      const double diff = static_cast<double>(c.values[next * m + j]) -
                          static_cast<double>(c.values[i * m + j]);
      energy += diff * diff;
    }
  }
  return energy;
}

std::vector<double> energy_table(const LatticeConfig& cfg) {
  const StateIndex size = dynamical_state_count(cfg);
  if (size > kDenseStateCap)
    throw CapError("dense energy table over " + std::to_string(size) +
                   " states exceeds cap " + std::to_string(kDenseStateCap));
  const StateIndex count = configuration_count(cfg);
  // Energy depends only on the current configuration; compute per
  // configuration once and tile across previous configurations.
  std::vector<double> per_config(count);
  for (StateIndex c = 0; c < count; ++c)
    per_config[c] = state_energy(decode_configuration(c, cfg), cfg);
  std::vector<double> table(size);
  for (StateIndex m = 0; m < size; ++m) table[m] = per_config[m % count];
  return table;
}

}  // namespace trilat
