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

#include "trilat/schema.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace trilat {

namespace {

void check_dimensions(const SchemaMemory& mem, const Pattern& p, const char* who) {
  if (p.size() != mem.n_units)
    throw std::invalid_argument(std::string(who) + ": pattern has " +
                                std::to_string(p.size()) + " units, memory has " +
                                std::to_string(mem.n_units));
}

// Block-diagonal composition of two memories; couplings across the halves
// stay zero.
SchemaMemory block_compose(const SchemaMemory& a, const SchemaMemory& b) {
  SchemaMemory out = make_memory(a.n_units + b.n_units, a.learning_rate,
                                 a.facilitation_threshold);
  for (std::size_t i = 0; i < a.n_units; ++i)
    for (std::size_t j = 0; j < a.n_units; ++j)
      out.weights[i * out.n_units + j] = a.weight(i, j);
  for (std::size_t i = 0; i < b.n_units; ++i)
    for (std::size_t j = 0; j < b.n_units; ++j)
      out.weights[(a.n_units + i) * out.n_units + (a.n_units + j)] = b.weight(i, j);
  return out;
}

Pattern concatenate(const Pattern& a, const Pattern& b) {
  Pattern out;
  out.units = a.units;
  out.units.insert(out.units.end(), b.units.begin(), b.units.end());
  return out;
}

}  // namespace

Pattern make_pattern(std::vector<std::int8_t> units, std::vector<Segment> segments) {
  if (units.empty()) throw InvariantError("pattern must be nonempty");
  for (std::int8_t u : units) {
    if (u != -1 && u != 1) throw InvariantError("pattern units must be -1 or +1");
  }
  if (!segments.empty()) {
    std::vector<char> covered(units.size(), 0);
    for (const Segment& s : segments) {
      if (s.begin >= s.end || s.end > units.size())
        throw InvariantError("segment span out of range");
      for (std::size_t i = s.begin; i < s.end; ++i) {
        if (covered[i]) throw InvariantError("segments overlap");
        covered[i] = 1;
      }
    }
    if (std::find(covered.begin(), covered.end(), 0) != covered.end())
      throw InvariantError("segments do not cover the pattern");
  }
  return Pattern{std::move(units), std::move(segments)};
}

Pattern make_bwb_pattern(std::vector<std::int8_t> units, std::size_t body_end,
                         std::size_t world_end) {
  const std::size_t n = units.size();
  if (!(body_end > 0 && body_end < world_end && world_end < n))
    throw InvariantError("body/world/belief boundaries must be strictly increasing");
  std::vector<Segment> segments{{SegmentKind::body, 0, body_end},
                                {SegmentKind::world, body_end, world_end},
                                {SegmentKind::belief, world_end, n}};
  return make_pattern(std::move(units), std::move(segments));
}

SchemaMemory make_memory(std::size_t n_units, double learning_rate,
                         int facilitation_threshold) {
  if (n_units == 0) throw InvariantError("memory needs at least one unit");
  if (!(learning_rate > 0.0)) throw InvariantError("learning rate must be positive");
  if (facilitation_threshold < 1)
    throw InvariantError("facilitation threshold must be positive");
  SchemaMemory mem;
  mem.n_units = n_units;
  mem.weights.assign(n_units * n_units, 0.0);
  mem.learning_rate = learning_rate;
  mem.facilitation_threshold = facilitation_threshold;
  return mem;
}

SchemaMemory facilitate(const SchemaMemory& mem, const Pattern& p, int duration,
                        double scale) {
  check_dimensions(mem, p, "facilitate");
  if (duration < 0) throw std::invalid_argument("facilitate: duration must be nonnegative");
  if (duration < mem.facilitation_threshold) return mem;  // too brief to engrave
  SchemaMemory out = mem;
  const double eta = mem.learning_rate * scale;
  for (std::size_t a = 0; a < mem.n_units; ++a) {
    for (std::size_t b = 0; b < mem.n_units; ++b) {
      if (a == b) continue;
      out.weights[a * mem.n_units + b] +=
          eta * static_cast<double>(p.units[a]) * static_cast<double>(p.units[b]);
    }
  }
  return out;
}

double hopfield_energy(const SchemaMemory& mem, const Pattern& p) {
  check_dimensions(mem, p, "hopfield_energy");
  double e = 0.0;
  for (std::size_t a = 0; a < mem.n_units; ++a)
    for (std::size_t b = 0; b < mem.n_units; ++b)
      e += mem.weight(a, b) * static_cast<double>(p.units[a]) *
           static_cast<double>(p.units[b]);
  return -0.5 * e;
}

RecallResult recall(const SchemaMemory& mem, const Pattern& cue, int max_sweeps,
                    std::vector<RecallTraceRow>* trace) {
  check_dimensions(mem, cue, "recall");
  if (max_sweeps < 1) throw std::invalid_argument("recall: max_sweeps must be positive");
  Pattern state = cue;
  bool converged = false;
  int sweeps_done = 0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (std::size_t a = 0; a < mem.n_units; ++a) {
      double field = 0.0;
      for (std::size_t b = 0; b < mem.n_units; ++b)
        field += mem.weight(a, b) * static_cast<double>(state.units[b]);
      const std::int8_t updated = field >= 0.0 ? 1 : -1;  // sign(0) fixed to +1
      const bool flipped = updated != state.units[a];
      state.units[a] = updated;
      changed = changed || flipped;
      if (trace != nullptr)
        trace->push_back(RecallTraceRow{sweep, a, flipped, hopfield_energy(mem, state)});
    }
    ++sweeps_done;
    if (!changed) {
      converged = true;
      break;
    }
  }
  return RecallResult{std::move(state), converged, sweeps_done};
}

bool is_fixed_point(const SchemaMemory& mem, const Pattern& p) {
  const RecallResult r = recall(mem, p, 1);
  return r.converged && r.pattern == p;
}

RecordReport record_check(const SchemaMemory& mem, const Pattern& p,
                          const SchemaMemory& partner_mem, const Pattern& partner) {
  check_dimensions(mem, p, "record_check");
  check_dimensions(partner_mem, partner, "record_check");
  RecordReport report;

  // Endures: fixed point, and attracting from every one-unit corruption.
  report.endures = is_fixed_point(mem, p);
  if (report.endures) {
    const int sweeps = std::max(8, static_cast<int>(mem.n_units));
    for (std::size_t k = 0; k < p.size() && report.endures; ++k) {
      Pattern corrupted = p;
      corrupted.units[k] = static_cast<std::int8_t>(-corrupted.units[k]);
      report.endures = recall(mem, corrupted, sweeps).pattern == p;
    }
  }

  // Copiable: engrave a fresh copy of p beside the original memory; the
  // doubled pattern must be a fixed point and the original couplings stay
  // untouched by construction of the block composition.
  SchemaMemory copy_target = make_memory(p.size(), mem.learning_rate,
                                         mem.facilitation_threshold);
  copy_target = facilitate(copy_target, p, mem.facilitation_threshold);
  const SchemaMemory doubled = block_compose(mem, copy_target);
  report.copiable = is_fixed_point(doubled, concatenate(p, p));

  // Combinable: both records on disjoint segments of the composed memory.
  const SchemaMemory combined = block_compose(mem, partner_mem);
  report.combinable = is_fixed_point(combined, concatenate(p, partner));

  return report;
}

RecordReport record_check(const SchemaMemory& mem, const Pattern& p) {
  return record_check(mem, p, mem, p);
}

BranchSet form_branches(std::span<const std::pair<Pattern, double>> alternatives) {
  if (alternatives.empty()) throw InvariantError("form_branches: no alternatives");
  double total = 0.0;
  for (const auto& [pattern, weight] : alternatives) {
    if (!(weight >= 0.0)) throw InvariantError("form_branches: negative weight");
    total += weight;
  }
  if (total <= 0.0) throw InvariantError("form_branches: all weights zero");
  std::vector<Branch> branches;
  branches.reserve(alternatives.size());
  for (std::size_t i = 0; i < alternatives.size(); ++i)
    branches.push_back(
        Branch{std::to_string(i), {std::sqrt(alternatives[i].second / total), 0.0}});
  return make_branch_set(std::move(branches));
}

std::pair<Pattern, SchemaMemory> actualize(const BranchSet& b,
                                           std::span<const Pattern> patterns_by_label,
                                           const SchemaMemory& mem, SeededRng& rng) {
  auto [label, post] = sparse_collapse(b, rng);
  const std::size_t index = static_cast<std::size_t>(std::stoull(label));
  if (index >= patterns_by_label.size())
    throw std::invalid_argument("actualize: label " + label + " has no pattern");
  const Pattern& chosen = patterns_by_label[index];
  SchemaMemory recorded = facilitate(mem, chosen, mem.facilitation_threshold);
  return {chosen, std::move(recorded)};
}

}  // namespace trilat
