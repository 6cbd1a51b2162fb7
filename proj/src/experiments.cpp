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

#include "trilat/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace trilat {

namespace {

// Seed streams. Patterns and probes are policy-independent; trial t draws
// from stream kTrialStreamBase + t, so trials can run in any order.
constexpr std::uint64_t kPatternStream = 1;
constexpr std::uint64_t kProbeStream = 2;
constexpr std::uint64_t kManyWorldsStream = 3;
constexpr std::uint64_t kTrialStreamBase = 1000;
constexpr std::uint64_t kStudyStreamBase = 500000;

int dot(const Pattern& a, const Pattern& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d += static_cast<int>(a.units[i]) * static_cast<int>(b.units[i]);
  return d;
}

Pattern random_pattern(int n_units, SeededRng& rng) {
  std::vector<std::int8_t> units(n_units);
  for (auto& u : units) u = rng.next_below(2) == 0 ? -1 : 1;
  if (n_units >= 4)
    return make_bwb_pattern(std::move(units), n_units / 2, (3 * n_units) / 4);
  return make_pattern(std::move(units));
}

Pattern flip_units(const Pattern& p, int flips, SeededRng& rng) {
  Pattern out = p;
  std::vector<std::size_t> positions(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) positions[i] = i;
  for (int f = 0; f < flips; ++f) {
    const std::size_t j =
        f + static_cast<std::size_t>(rng.next_below(positions.size() - f));
    std::swap(positions[f], positions[j]);
    out.units[positions[f]] = static_cast<std::int8_t>(-out.units[positions[f]]);
  }
  return out;
}

// The pattern laid onto the lattice one unit per slot.
FieldConfiguration pattern_configuration(const Pattern& p) {
  FieldConfiguration c;
  c.values.assign(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) c.values[i] = p.units[i];
  return c;
}

// One classical branch: a pattern's anchor state carried through the lattice
// dynamics together with its Born weight.
struct BranchTrack {
  DynamicalState state;
  double weight = 0.0;
  bool alive = true;
};

double alive_mass(const std::vector<BranchTrack>& branches) {
  double total = 0.0;
  for (const BranchTrack& b : branches)
    if (b.alive) total += b.weight;
  return total;
}

void renormalize_alive(std::vector<BranchTrack>& branches) {
  const double total = alive_mass(branches);
  if (total <= 0.0) throw InvariantError("branch superposition lost all weight");
  for (BranchTrack& b : branches) {
    if (b.alive) {
      b.weight /= total;
    } else {
      b.weight = 0.0;
    }
  }
}

void assert_branch_norm(const std::vector<BranchTrack>& branches) {
  if (std::fabs(alive_mass(branches) - 1.0) > kAmplitudeNormTol)
    throw InvariantError("branch weights drifted from unit norm");
}

// Total variation distance between the evolving branch superposition and the
// collapse-free baseline carrying the same anchors.
double tv_against_baseline(const std::vector<BranchTrack>& branches,
                           const std::vector<double>& baseline_weights) {
  double tv = 0.0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    const double w = branches[i].alive ? branches[i].weight : 0.0;
    tv += std::fabs(w - baseline_weights[i]);
  }
  return 0.5 * tv;
}

std::size_t draw_alive_branch(const std::vector<BranchTrack>& branches, SeededRng& rng) {
  std::vector<double> weights(branches.size(), 0.0);
  for (std::size_t i = 0; i < branches.size(); ++i)
    if (branches[i].alive) weights[i] = branches[i].weight;
  return sample_weighted_index(weights, rng.next_unit());
}

bool patterns_separated(const std::vector<Pattern>& patterns, double threshold) {
  const double n = static_cast<double>(patterns.empty() ? 1 : patterns[0].size());
  for (std::size_t i = 0; i < patterns.size(); ++i)
    for (std::size_t j = i + 1; j < patterns.size(); ++j)
      if (std::fabs(static_cast<double>(dot(patterns[i], patterns[j]))) / n >= threshold)
        return false;
  return true;
}

}  // namespace

std::string to_string(CollapsePolicy policy) {
  switch (policy) {
    case CollapsePolicy::per_site_every_step:
      return "per_site_every_step";
    case CollapsePolicy::branch_level_after_separation:
      return "branch_level_after_separation";
    case CollapsePolicy::none:
      return "none";
  }
  throw std::invalid_argument("unknown collapse policy");
}

CollapsePolicy collapse_policy_from_string(const std::string& name) {
  if (name == "per_site_every_step") return CollapsePolicy::per_site_every_step;
  if (name == "branch_level_after_separation")
    return CollapsePolicy::branch_level_after_separation;
  if (name == "none") return CollapsePolicy::none;
  throw ConfigError("unknown collapse policy: " + name);
}

void ExperimentConfig::validate() const {
  if (n_trials < 1) throw ConfigError("n_trials must be at least 1");
  if (n_neurons < 2) throw ConfigError("n_neurons must be at least 2");
  if (n_patterns < 1) throw ConfigError("n_patterns must be at least 1");
  if (n_steps < 1) throw ConfigError("n_steps must be at least 1");
  if (n_seeds < 1) throw ConfigError("n_seeds must be at least 1");
  if (cue_flips < 0 || cue_flips > n_neurons)
    throw ConfigError("cue_flips must lie in [0, n_neurons]");
  if (probe_flips < 0 || probe_flips > n_neurons)
    throw ConfigError("probe_flips must lie in [0, n_neurons]");
  if (probes_per_pattern < 1) throw ConfigError("probes_per_pattern must be positive");
  if (!(separation_threshold > 0.0 && separation_threshold <= 1.0))
    throw ConfigError("separation_threshold must lie in (0, 1]");
  if (!(mw_bias > 0.0 && mw_bias < 1.0)) throw ConfigError("mw_bias must lie in (0, 1)");
  if (mw_branchings < 1) throw ConfigError("mw_branchings must be positive");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (max_recall_sweeps < 1) throw ConfigError("max_recall_sweeps must be positive");
  if (lattice.n_slots() != n_neurons)
    throw ConfigError("lattice must carry one slot per neuron: " +
                      std::to_string(lattice.n_slots()) + " slots vs " +
                      std::to_string(n_neurons) + " neurons");
  if (lattice.half_range < 1)
    throw ConfigError("lattice half_range must cover unit values -1/+1");
  if (static_cast<StateIndex>(n_patterns) > kDenseStateCap)
    throw CapError("branch superposition over " + std::to_string(n_patterns) +
                   " anchors exceeds the dense-space cap");
}

std::vector<Pattern> experiment_patterns(const ExperimentConfig& cfg) {
  cfg.validate();
  SeededRng rng(derive_seed(cfg.seed, kPatternStream));
  const int max_overlap = cfg.n_neurons / 4;
  std::vector<Pattern> patterns;
  patterns.reserve(cfg.n_patterns);
  for (int k = 0; k < cfg.n_patterns; ++k) {
    Pattern best = random_pattern(cfg.n_neurons, rng);
    int best_overlap = cfg.n_neurons + 1;
    for (int attempt = 0; attempt < 20000; ++attempt) {
      Pattern candidate = attempt == 0 ? best : random_pattern(cfg.n_neurons, rng);
      int worst = 0;
      for (const Pattern& p : patterns) worst = std::max(worst, std::abs(dot(candidate, p)));
      if (worst < best_overlap) {
        best_overlap = worst;
        best = candidate;
      }
      if (best_overlap <= max_overlap) break;
    }
    patterns.push_back(std::move(best));
  }
  return patterns;
}

MetricsReport run_collapse_level_experiment(const ExperimentConfig& cfg,
                                            CollapsePolicy policy) {
  cfg.validate();
  const std::vector<Pattern> patterns = experiment_patterns(cfg);
  const bool separated = patterns_separated(patterns, cfg.separation_threshold);

  SchemaMemory memory = make_memory(cfg.n_neurons, cfg.learning_rate, 1);

  MetricsReport report;
  report.policy = to_string(policy);
  report.seed = cfg.seed;
  report.separated = separated;
  report.branch_count_trace.assign(cfg.n_steps, 0);

  double disruption_total = 0.0;
  double weight_min = 1.0;
  double weight_max = 0.0;
  double weight_sum = 0.0;
  std::uint64_t weight_samples = 0;

  for (int trial = 0; trial < cfg.n_trials; ++trial) {
    SeededRng rng(derive_seed(cfg.seed, kTrialStreamBase + static_cast<std::uint64_t>(trial)));

    // Cue-driven alternatives.
    const int target = static_cast<int>(rng.next_below(cfg.n_patterns));
    const Pattern cue = flip_units(patterns[target], cfg.cue_flips, rng);
    std::vector<std::pair<Pattern, double>> alternatives;
    alternatives.reserve(patterns.size());
    double total_score = 0.0;
    for (const Pattern& p : patterns) {
      const double overlap = std::max(0, dot(cue, p));
      alternatives.emplace_back(p, overlap * overlap);
      total_score += overlap * overlap;
    }
    if (total_score <= 0.0)
      for (auto& [p, w] : alternatives) w = 1.0;
    const BranchSet formed = form_branches(alternatives);

    // Anchor every branch on the lattice state carrying its pattern.
    std::vector<BranchTrack> branches(patterns.size());
    std::vector<double> baseline_weights(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      const FieldConfiguration c = pattern_configuration(patterns[i]);
      branches[i].state = DynamicalState{c, c};
      branches[i].weight = std::norm(formed.branches[i].weight);
      baseline_weights[i] = branches[i].weight;
    }
    assert_branch_norm(branches);

    // The record the trial engraves. Under per-site collapse it is assembled
    // from the values actualized at individual sites; otherwise it is the
    // pattern of the branch actualized at the end.
    std::vector<std::int8_t> assembled(cfg.n_neurons, 0);
    std::vector<bool> measured(cfg.n_neurons, false);

    double tv_sum = 0.0;
    for (int step = 0; step < cfg.n_steps; ++step) {
      for (BranchTrack& b : branches) b.state = step_classical(b.state, cfg.lattice);

      if (policy == CollapsePolicy::per_site_every_step) {
        const int site = step % cfg.lattice.n_sites;
        const int field = (step / cfg.lattice.n_sites) % cfg.lattice.n_fields;
        const int slot = site * cfg.lattice.n_fields + field;

        // Born draw over the value classes of the surviving branches.
        const int base = cfg.lattice.base();
        std::vector<double> class_weights(base, 0.0);
        for (const BranchTrack& b : branches) {
          if (!b.alive) continue;
          class_weights[b.state.current.values[slot] + cfg.lattice.half_range] +=
              b.weight;
        }
        const int observed =
            static_cast<int>(sample_weighted_index(class_weights, rng.next_unit())) -
            cfg.lattice.half_range;
        for (BranchTrack& b : branches)
          if (b.alive && b.state.current.values[slot] != observed) b.alive = false;
        renormalize_alive(branches);

        // The actualized low-level fact becomes this unit's record entry
        // (latest measurement wins; value 0 reads as +1, the sign convention
        // used by recall).
        const int unit = slot % cfg.n_neurons;
        assembled[unit] = observed >= 0 ? 1 : -1;
        measured[unit] = true;
      }

      assert_branch_norm(branches);
      tv_sum += tv_against_baseline(branches, baseline_weights);
      std::uint64_t alive = 0;
      for (const BranchTrack& b : branches)
        if (b.alive) ++alive;
      report.branch_count_trace[step] += alive;
    }
    disruption_total += tv_sum / cfg.n_steps;

    for (const BranchTrack& b : branches) {
      if (!b.alive) continue;
      weight_min = std::min(weight_min, b.weight);
      weight_max = std::max(weight_max, b.weight);
      weight_sum += b.weight;
      ++weight_samples;
    }

    // Actualization and record formation.
    switch (policy) {
      case CollapsePolicy::per_site_every_step: {
        const std::size_t chosen = draw_alive_branch(branches, rng);
        Pattern record = patterns[chosen];
        for (int u = 0; u < cfg.n_neurons; ++u)
          if (measured[u]) record.units[u] = assembled[u];
        memory = facilitate(memory, record, memory.facilitation_threshold);
        break;
      }
      case CollapsePolicy::branch_level_after_separation: {
        // One high-level event once the branches have separated: actualize a
        // whole branch, eradicate the others, record its pattern.
        const std::size_t chosen = draw_alive_branch(branches, rng);
        for (std::size_t i = 0; i < branches.size(); ++i)
          branches[i].alive = i == chosen;
        renormalize_alive(branches);
        assert_branch_norm(branches);
        memory = facilitate(memory, patterns[chosen], memory.facilitation_threshold);
        break;
      }
      case CollapsePolicy::none: {
        // No actual event: every branch persists and engraves only in
        // proportion to its weight.
        for (std::size_t i = 0; i < branches.size(); ++i)
          memory = facilitate(memory, patterns[i], memory.facilitation_threshold,
                              branches[i].weight);
        break;
      }
    }
  }

  report.disruption_index = disruption_total / cfg.n_trials;
  if (weight_samples > 0) {
    report.branch_weight_stats.min = weight_min;
    report.branch_weight_stats.max = weight_max;
    report.branch_weight_stats.mean = weight_sum / static_cast<double>(weight_samples);
  }

  // Held-out evaluation: exact recall of every stored pattern from corrupted
  // cues, drawn from a policy-independent stream.
  SeededRng probe_rng(derive_seed(cfg.seed, kProbeStream));
  int hits = 0;
  int probes = 0;
  for (int k = 0; k < cfg.n_patterns; ++k) {
    for (int j = 0; j < cfg.probes_per_pattern; ++j) {
      const Pattern probe = flip_units(patterns[k], cfg.probe_flips, probe_rng);
      const RecallResult r = recall(memory, probe, cfg.max_recall_sweeps);
      hits += r.pattern == patterns[k] ? 1 : 0;
      ++probes;
    }
  }
  report.learning_score = static_cast<double>(hits) / static_cast<double>(probes);
  return report;
}

PolicyComparison run_collapse_level_experiment(const ExperimentConfig& cfg) {
  PolicyComparison out;
  out.per_site = run_collapse_level_experiment(cfg, CollapsePolicy::per_site_every_step);
  out.branch_level =
      run_collapse_level_experiment(cfg, CollapsePolicy::branch_level_after_separation);
  out.none = run_collapse_level_experiment(cfg, CollapsePolicy::none);
  return out;
}

CollapseLevelStudy collapse_level_study(const ExperimentConfig& cfg) {
  cfg.validate();
  CollapseLevelStudy study;
  study.per_seed.resize(cfg.n_seeds);
#pragma omp parallel for schedule(dynamic)
  for (int s = 0; s < cfg.n_seeds; ++s) {
    ExperimentConfig seeded = cfg;
    seeded.seed = derive_seed(cfg.seed, kStudyStreamBase + static_cast<std::uint64_t>(s));
    study.per_seed[s] = run_collapse_level_experiment(seeded);
  }

  std::vector<double> learn_branch(cfg.n_seeds), learn_site(cfg.n_seeds);
  std::vector<double> disrupt_branch(cfg.n_seeds), disrupt_site(cfg.n_seeds);
  for (int s = 0; s < cfg.n_seeds; ++s) {
    learn_branch[s] = study.per_seed[s].branch_level.learning_score;
    learn_site[s] = study.per_seed[s].per_site.learning_score;
    disrupt_branch[s] = study.per_seed[s].branch_level.disruption_index;
    disrupt_site[s] = study.per_seed[s].per_site.disruption_index;
  }
  study.sign_tests.learning = stats::sign_test_greater(learn_branch, learn_site);
  study.sign_tests.disruption = stats::sign_test_greater(disrupt_site, disrupt_branch);
  study.sign_tests.learning_pass =
      study.sign_tests.learning.p_value < study.sign_tests.significance;
  study.sign_tests.disruption_pass =
      study.sign_tests.disruption.p_value < study.sign_tests.significance;
  return study;
}

MetricsReport run_many_worlds_comparison(const ExperimentConfig& cfg,
                                         BranchSet* final_branches) {
  cfg.validate();
  if (cfg.policy == CollapsePolicy::per_site_every_step)
    throw ConfigError("many-worlds comparison takes policy none or the branch-level control");
  const bool collapsing = cfg.policy == CollapsePolicy::branch_level_after_separation;
  SeededRng rng(derive_seed(cfg.seed, kManyWorldsStream));

  MetricsReport report;
  report.policy = to_string(cfg.policy);
  report.seed = cfg.seed;

  BranchSet world = make_branch_set({Branch{"r", {1.0, 0.0}}});
  report.branch_count_trace.push_back(world.size());
  const double heavy = std::sqrt(cfg.mw_bias);
  const double light = std::sqrt(1.0 - cfg.mw_bias);

  for (int event = 0; event < cfg.mw_branchings; ++event) {
    if (world.size() * 2 > kBranchCap) {
      report.truncated = true;  // cap reached: stop branching, never silently drop
      break;
    }
    std::vector<Branch> next;
    next.reserve(world.size() * 2);
    for (const Branch& b : world.branches) {
      next.push_back(Branch{b.label + "0", b.weight * heavy});
      next.push_back(Branch{b.label + "1", b.weight * light});
    }
    world = make_branch_set(std::move(next));
    if (collapsing) {
      auto [label, post] = sparse_collapse(world, rng);
      world = std::move(post);
    }
    report.branch_count_trace.push_back(world.size());
  }

  double min = 1.0, max = 0.0, sum = 0.0;
  for (const Branch& b : world.branches) {
    const double w = std::norm(b.weight);
    min = std::min(min, w);
    max = std::max(max, w);
    sum += w;
  }
  report.branch_weight_stats =
      BranchWeightStats{min, max, sum / static_cast<double>(world.size())};
  if (final_branches != nullptr) *final_branches = std::move(world);
  return report;
}

stats::ChiSquareReport born_trials(const AmplitudeVector& a, int n, std::uint64_t seed,
                                   double significance) {
  if (n < 1000) throw std::invalid_argument("born_trials: need at least 1000 draws");
  std::vector<double> probs(a.size());
  for (std::size_t m = 0; m < a.size(); ++m) probs[m] = a.moduli[m] * a.moduli[m];
  SeededRng rng(seed);
  std::vector<std::uint64_t> counts(a.size(), 0);
  for (int t = 0; t < n; ++t) ++counts[sample_weighted_index(probs, rng.next_unit())];
  return stats::chi_square_test(probs, counts, significance);
}

stats::ChiSquareReport born_trials(const BranchSet& b, int n, std::uint64_t seed,
                                   double significance) {
  if (n < 1000) throw std::invalid_argument("born_trials: need at least 1000 draws");
  std::vector<double> probs(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) probs[i] = std::norm(b.branches[i].weight);
  SeededRng rng(seed);
  std::vector<std::uint64_t> counts(b.size(), 0);
  for (int t = 0; t < n; ++t) ++counts[sample_weighted_index(probs, rng.next_unit())];
  return stats::chi_square_test(probs, counts, significance);
}

}  // namespace trilat
