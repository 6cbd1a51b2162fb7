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
#include <string>
#include <utility>
#include <vector>

#include "trilat/amplitudes.hpp"
#include "trilat/rng.hpp"
#include "trilat/types.hpp"

namespace trilat {

enum class SegmentKind { body, world, belief };

/// Labeled half-open span [begin, end) of pattern units.
struct Segment {
  SegmentKind kind = SegmentKind::body;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Segment&) const = default;
};

/// A pattern of unit activations in {-1, +1}, optionally segmented into
/// body / world / belief spans that must partition the unit array.
struct Pattern {
  std::vector<std::int8_t> units;
  std::vector<Segment> segments;

  std::size_t size() const { return units.size(); }
  bool operator==(const Pattern& other) const { return units == other.units; }
};

Pattern make_pattern(std::vector<std::int8_t> units, std::vector<Segment> segments = {});

/// Body-world-belief segmentation: [0, body_end), [body_end, world_end),
/// [world_end, n).
Pattern make_bwb_pattern(std::vector<std::int8_t> units, std::size_t body_end,
                         std::size_t world_end);

/// Associative pattern memory: symmetric coupling matrix with zero diagonal,
/// strengthened by Hebbian facilitation. Immutable value; facilitation
/// returns a new memory.
struct SchemaMemory {
  std::size_t n_units = 0;
  std::vector<double> weights;  // row-major n_units x n_units
  double learning_rate = 1.0;
  int facilitation_threshold = 1;

  double weight(std::size_t a, std::size_t b) const { return weights[a * n_units + b]; }
};

SchemaMemory make_memory(std::size_t n_units, double learning_rate = 1.0,
                         int facilitation_threshold = 1);

/// Hebbian strengthening, gated by the facilitation threshold: when the
/// pattern persisted for at least `duration >= threshold` steps the couplings
/// gain learning_rate * scale * (p p^T) with the diagonal kept at zero.
SchemaMemory facilitate(const SchemaMemory& mem, const Pattern& p, int duration,
                        double scale = 1.0);

/// -1/2 * u^T W u; never increases along an asynchronous recall trace.
double hopfield_energy(const SchemaMemory& mem, const Pattern& p);

/// One row per unit update during recall.
struct RecallTraceRow {
  int sweep = 0;
  std::size_t unit = 0;
  bool flipped = false;
  double energy = 0.0;
};

struct RecallResult {
  Pattern pattern;
  bool converged = false;
  int sweeps = 0;
};

/// Deterministic asynchronous recall: units update in ascending order,
/// unit_a <- sign(sum_b W[a][b] unit_b) with sign(0) = +1, until a full sweep
/// changes nothing or max_sweeps is exhausted.
RecallResult recall(const SchemaMemory& mem, const Pattern& cue, int max_sweeps,
                    std::vector<RecallTraceRow>* trace = nullptr);

bool is_fixed_point(const SchemaMemory& mem, const Pattern& p);

/// Record properties in the sense of durable / copiable / combinable
/// attractors; each flag is backed by executed recall traces.
struct RecordReport {
  bool endures = false;
  bool copiable = false;
  bool combinable = false;
};

/// Checks p against `mem`. `endures`: p is a fixed point and every one-unit
/// corruption recalls back to p. `copiable`: writing a fresh Hebbian copy of p
/// into the second half of a doubled memory leaves the pair of copies a fixed
/// point without touching the original couplings. `combinable`: p and
/// `partner` (stored in `partner_mem`), laid on disjoint segments of the
/// block-composed memory, are simultaneously a fixed point.
RecordReport record_check(const SchemaMemory& mem, const Pattern& p,
                          const SchemaMemory& partner_mem, const Pattern& partner);

/// Single-pattern variant: the combinable check pairs p with a second copy of
/// itself.
RecordReport record_check(const SchemaMemory& mem, const Pattern& p);

/// Superposition of alternative patterns with nonnegative weights: branch i
/// has label std::to_string(i) and modulus sqrt(w_i / sum w).
BranchSet form_branches(std::span<const std::pair<Pattern, double>> alternatives);

/// Collapse to one branch and facilitate the actualized pattern into the
/// memory (duration = facilitation threshold), recording the chosen thought.
/// `patterns_by_label[i]` is the pattern behind label std::to_string(i).
std::pair<Pattern, SchemaMemory> actualize(const BranchSet& b,
                                           std::span<const Pattern> patterns_by_label,
                                           const SchemaMemory& mem, SeededRng& rng);

}  // namespace trilat
