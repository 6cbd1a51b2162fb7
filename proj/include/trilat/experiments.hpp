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
#include <string>
#include <vector>

#include "trilat/amplitudes.hpp"
#include "trilat/lattice.hpp"
#include "trilat/schema.hpp"
#include "trilat/stats.hpp"
#include "trilat/types.hpp"

namespace trilat {

/// Where the collapse events are placed during a trial.
enum class CollapsePolicy {
  per_site_every_step,            // one site measurement after every step
  branch_level_after_separation,  // one whole-branch event after the window
  none,                           // no events; every branch persists
};

std::string to_string(CollapsePolicy policy);
CollapsePolicy collapse_policy_from_string(const std::string& name);

/// Configuration of the trial harnesses. The lattice hosts the patterns
/// one unit per slot, so n_neurons must equal n_sites * n_fields and
/// half_range must cover the unit values -1/+1.
struct ExperimentConfig {
  LatticeConfig lattice = LatticeConfig::make(16, 1, 1, 16, 1, 0.0);
  int n_neurons = 16;
  int n_patterns = 3;
  int cue_flips = 5;
  int probe_flips = 2;
  int probes_per_pattern = 20;
  CollapsePolicy policy = CollapsePolicy::branch_level_after_separation;
  int n_trials = 200;
  int n_steps = 16;
  std::uint64_t seed = 0;
  double separation_threshold = 0.5;
  int n_seeds = 20;
  double mw_bias = 0.9;    // probability of the heavy child at a binary branching
  int mw_branchings = 10;  // branching events in the many-worlds run
  double learning_rate = 1.0;
  int max_recall_sweeps = 50;

  void validate() const;
};

struct BranchWeightStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

/// Outcome of one experiment run; reproducible bit-for-bit from
/// (config, seed).
struct MetricsReport {
  std::string policy;
  double learning_score = 0.0;     // held-out exact-recall accuracy in [0, 1]
  double disruption_index = 0.0;   // mean in-window TV divergence vs the
                                   // collapse-free baseline
  std::vector<std::uint64_t> branch_count_trace;
  BranchWeightStats branch_weight_stats;
  std::uint64_t seed = 0;
  bool truncated = false;  // many-worlds branch cap reached
  bool separated = true;   // branch patterns met the separation criterion
};

struct PolicyComparison {
  MetricsReport per_site;
  MetricsReport branch_level;
  MetricsReport none;
};

struct SignTestSummary {
  stats::SignTestResult learning;    // branch_level > per_site on learning_score
  stats::SignTestResult disruption;  // per_site > branch_level on disruption_index
  double significance = 0.05;
  bool learning_pass = false;
  bool disruption_pass = false;
};

struct CollapseLevelStudy {
  std::vector<PolicyComparison> per_seed;
  SignTestSummary sign_tests;
};

/// The stored pattern set a given experiment seed trains on.
std::vector<Pattern> experiment_patterns(const ExperimentConfig& cfg);

/// One training run under one policy: per trial, cue-driven alternatives form
/// a branch superposition anchored on lattice states, the lattice evolves,
/// collapse events fire per the policy, and the actualized record is
/// facilitated. Learning is then scored on held-out corrupted cues.
MetricsReport run_collapse_level_experiment(const ExperimentConfig& cfg,
                                            CollapsePolicy policy);

/// All three policies with identical derived seeds.
PolicyComparison run_collapse_level_experiment(const ExperimentConfig& cfg);

/// The comparison repeated over n_seeds master seeds plus one-sided sign
/// tests of the two directional claims.
CollapseLevelStudy collapse_level_study(const ExperimentConfig& cfg);

/// No-collapse branching bookkeeping: every biased binary branching doubles
/// the branch count and every branch persists, however small its weight.
/// With a collapsing policy the same run holds the count at one. The final
/// branch set is copied out when requested.
MetricsReport run_many_worlds_comparison(const ExperimentConfig& cfg,
                                         BranchSet* final_branches = nullptr);

/// Empirical collapse frequencies against squared moduli / squared branch
/// weights, n >= 1000 seeded draws.
stats::ChiSquareReport born_trials(const AmplitudeVector& a, int n, std::uint64_t seed,
                                   double significance = 1e-3);
stats::ChiSquareReport born_trials(const BranchSet& b, int n, std::uint64_t seed,
                                   double significance = 1e-3);

}  // namespace trilat
