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
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "trilat/amplitudes.hpp"
#include "trilat/experiments.hpp"
#include "trilat/lattice.hpp"
#include "trilat/schema.hpp"
#include "trilat/stats.hpp"

namespace trilat::io {

using Json = nlohmann::ordered_json;

/// key = value document, one pair per line; '#' starts a comment. Unknown or
/// duplicate keys are reported with their line number.
struct ConfigDocument {
  std::map<std::string, std::string> values;
  std::map<std::string, int> lines;

  bool has(const std::string& key) const { return values.count(key) != 0; }
};

ConfigDocument parse_config_document(const std::string& text);

/// Lattice settings from the key = value document
/// (n_sites, n_fields, half_range, n_timesteps, neighbor_radius, phase_rate).
LatticeConfig parse_lattice_config(const std::string& text);
std::string format_lattice_config(const LatticeConfig& cfg);

/// Experiment settings: the lattice keys plus the harness keys
/// (n_neurons, n_patterns, policy, n_trials, n_steps, separation_threshold,
/// n_seeds, experiment, ...). Unset keys keep their defaults.
ExperimentConfig parse_experiment_config(const std::string& text);

/// Which experiment a config document requests: "collapse_level" (default)
/// or "many_worlds".
std::string experiment_kind(const std::string& text);

// JSON views of the value types (external schemas).
Json to_json(const RegisterReport& r);
Json to_json(const Ensemble& e);           // flat probability array
Json to_json(const AmplitudeVector& a);    // {moduli: [...], phases: [...]}
Json to_json(const stats::ChiSquareReport& r);
Json to_json(const Pattern& p);
Json to_json(const SchemaMemory& m);
Json to_json(const MetricsReport& r);
Json to_json(const SignTestSummary& s);

FieldConfiguration configuration_from_json(const Json& j, const LatticeConfig& cfg);
DynamicalState dynamical_from_json(const Json& j, const LatticeConfig& cfg);

/// CSV lines (label, weight) for a branch set.
std::string branch_weight_csv(const BranchSet& b);

/// CSV lines (sweep, unit, flipped, energy) for a recall trace.
std::string recall_trace_csv(const std::vector<RecallTraceRow>& trace);

/// FNV-1a 64-bit content hash, hex-encoded.
std::string content_hash(const std::string& bytes);

/// Collects emitted files and finishes by writing manifest.json (always the
/// last write) listing every file with its content hash.
class OutputWriter {
 public:
  explicit OutputWriter(std::filesystem::path directory);

  void write_text(const std::string& filename, const std::string& text);
  void write_json(const std::string& filename, const Json& j);

  /// Writes manifest.json with the subcommand, config echo, seed and the
  /// emitted-file list. No further writes are allowed afterwards.
  void finish(const std::string& subcommand, const Json& run_info);

  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> emitted_;  // name, hash
  bool finished_ = false;
};

}  // namespace trilat::io
