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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "trilat/experiments.hpp"
#include "trilat/io.hpp"
#include "trilat/lattice.hpp"
#include "trilat/schema.hpp"
#include "trilat/types.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitConfigError = 2;
constexpr int kExitCapExceeded = 3;
constexpr int kExitInvariantViolation = 4;

using trilat::io::Json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw trilat::ConfigError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json run_info(const std::string& config_text, std::optional<std::uint64_t> seed,
              Json flags = Json::object()) {
  Json info;
  info["version"] = kVersion;
  info["config"] = config_text;
  if (seed) {
    info["seed"] = *seed;
  } else {
    info["seed"] = nullptr;
  }
  info["flags"] = std::move(flags);
  return info;
}

struct SimulateOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::string mode = "classical";
  std::string initial_path;
  int steps = -1;  // -1: use the config's n_timesteps
  int collapse_every = 0;
  std::optional<std::uint64_t> seed;
};

std::size_t argmax_index(const std::vector<double>& xs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] > xs[best]) best = i;
  return best;
}

int cmd_count(const std::string& config_path, const std::string& out_dir) {
  const std::string text = read_file(config_path);
  const trilat::LatticeConfig cfg = trilat::io::parse_lattice_config(text);
  const trilat::RegisterReport report = trilat::register_accounting(cfg);
  const Json j = trilat::io::to_json(report);
  std::cout << j.dump(2) << "\n";
  if (!out_dir.empty()) {
    trilat::io::OutputWriter writer(out_dir);
    writer.write_json("register_report.json", j);
    writer.finish("count", run_info(text, std::nullopt));
  }
  return 0;
}

int cmd_simulate(const SimulateOptions& opt) {
  const std::string text = read_file(opt.config_path);
  const trilat::LatticeConfig cfg = trilat::io::parse_lattice_config(text);
  const int steps = opt.steps >= 0 ? opt.steps : cfg.n_timesteps;

  trilat::DynamicalState initial{trilat::zero_configuration(cfg),
                                 trilat::zero_configuration(cfg)};
  if (!opt.initial_path.empty()) {
    const Json j = Json::parse(read_file(opt.initial_path));
    initial = trilat::io::dynamical_from_json(j, cfg);
  }

  trilat::io::OutputWriter writer(opt.out_dir);
  Json flags{{"mode", opt.mode}, {"steps", steps}, {"collapse_every", opt.collapse_every}};

  if (opt.mode == "classical") {
    const auto trajectory = trilat::evolve_classical(initial, cfg, steps);
    Json indices = Json::array();
    Json states = Json::array();
    for (const auto& s : trajectory) {
      indices.push_back(trilat::encode(s, cfg));
      states.push_back(Json{{"current", s.current.values}, {"previous", s.previous.values}});
    }
    writer.write_json("trajectory.json", indices);
    writer.write_json("states.json", states);
  } else if (opt.mode == "statistical") {
    const auto perm = trilat::step_permutation(cfg);
    trilat::Ensemble e = trilat::point_ensemble(trilat::encode(initial, cfg), perm.size());
    Json indices = Json::array();
    Json snapshots = Json::array();
    indices.push_back(argmax_index(e.probabilities));
    snapshots.push_back(trilat::io::to_json(e));
    for (int t = 0; t < steps; ++t) {
      e = trilat::push_forward(e, perm);
      indices.push_back(argmax_index(e.probabilities));
      snapshots.push_back(trilat::io::to_json(e));
    }
    writer.write_json("trajectory.json", indices);
    writer.write_json("ensembles.json", snapshots);
  } else if (opt.mode == "quantum") {
    const auto perm = trilat::step_permutation(cfg);
    const auto energy = trilat::energy_table(cfg);
    const trilat::Ensemble start =
        trilat::point_ensemble(trilat::encode(initial, cfg), perm.size());
    trilat::AmplitudeVector a = trilat::lift(start, std::vector<double>(perm.size(), 0.0));
    std::optional<trilat::SeededRng> rng;
    if (opt.collapse_every > 0) rng.emplace(*opt.seed);
    Json indices = Json::array();
    Json snapshots = Json::array();
    std::ostringstream collapse_log;
    collapse_log << "step,observed_index\n";
    bool collapsed_any = false;
    indices.push_back(argmax_index(a.moduli));
    snapshots.push_back(trilat::io::to_json(a));
    for (int t = 1; t <= steps; ++t) {
      a = trilat::unitary_step(a, perm, energy, cfg.phase_rate);
      if (opt.collapse_every > 0 && t % opt.collapse_every == 0) {
        auto [m, post] = trilat::collapse_full(a, *rng);
        a = std::move(post);
        collapse_log << t << "," << m << "\n";
        collapsed_any = true;
      }
      indices.push_back(argmax_index(a.moduli));
      snapshots.push_back(trilat::io::to_json(a));
    }
    writer.write_json("trajectory.json", indices);
    writer.write_json("amplitudes.json", snapshots);
    if (collapsed_any) writer.write_text("collapse_log.csv", collapse_log.str());
  } else {
    throw trilat::ConfigError("unknown mode: " + opt.mode +
                              " (expected classical | statistical | quantum)");
  }

  writer.finish("simulate", run_info(text, opt.seed, flags));
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir,
                   std::uint64_t seed) {
  const std::string text = read_file(config_path);
  const std::string kind = trilat::io::experiment_kind(text);
  trilat::ExperimentConfig cfg = trilat::io::parse_experiment_config(text);
  cfg.seed = seed;

  trilat::io::OutputWriter writer(out_dir);
  if (kind == "collapse_level") {
    const trilat::CollapseLevelStudy study = trilat::collapse_level_study(cfg);
    Json per_seed = Json::array();
    std::ostringstream csv;
    csv << "policy,seed,learning_score,disruption_index\n";
    for (const auto& comparison : study.per_seed) {
      per_seed.push_back(Json{{"per_site", trilat::io::to_json(comparison.per_site)},
                              {"branch_level", trilat::io::to_json(comparison.branch_level)},
                              {"none", trilat::io::to_json(comparison.none)}});
      for (const auto* r :
           {&comparison.per_site, &comparison.branch_level, &comparison.none}) {
        char buffer[64];
        std::snprintf(buffer, sizeof buffer, "%.17g,%.17g", r->learning_score,
                      r->disruption_index);
        csv << r->policy << "," << r->seed << "," << buffer << "\n";
      }
    }
    Json study_json{{"version", kVersion},
                    {"seed", seed},
                    {"config", text},
                    {"per_seed", std::move(per_seed)}};
    writer.write_json("study.json", study_json);
    writer.write_json("sign_test_summary.json", trilat::io::to_json(study.sign_tests));
    writer.write_text("scores.csv", csv.str());
  } else {
    trilat::BranchSet final_branches;
    const trilat::MetricsReport report =
        trilat::run_many_worlds_comparison(cfg, &final_branches);
    Json j{{"version", kVersion},
           {"seed", seed},
           {"config", text},
           {"report", trilat::io::to_json(report)}};
    writer.write_json("many_worlds.json", j);
    writer.write_text("branch_weights.csv", trilat::io::branch_weight_csv(final_branches));
  }
  writer.finish("experiment", run_info(text, seed, Json{{"experiment", kind}}));
  return 0;
}

int cmd_recall_demo(const std::string& config_path, const std::string& out_dir,
                    std::uint64_t seed) {
  std::string text;
  trilat::ExperimentConfig cfg;
  if (!config_path.empty()) {
    text = read_file(config_path);
    cfg = trilat::io::parse_experiment_config(text);
  }
  cfg.seed = seed;

  const auto patterns = trilat::experiment_patterns(cfg);
  trilat::SchemaMemory memory = trilat::make_memory(cfg.n_neurons, cfg.learning_rate, 1);
  for (const auto& p : patterns)
    memory = trilat::facilitate(memory, p, memory.facilitation_threshold);

  trilat::SeededRng rng(trilat::derive_seed(seed, 42));
  trilat::Pattern cue = patterns[0];
  for (int f = 0; f < cfg.probe_flips; ++f) {
    const std::size_t u = rng.next_below(cue.size());
    cue.units[u] = static_cast<std::int8_t>(-cue.units[u]);
  }
  std::vector<trilat::RecallTraceRow> trace;
  const trilat::RecallResult result =
      trilat::recall(memory, cue, cfg.max_recall_sweeps, &trace);

  trilat::io::OutputWriter writer(out_dir);
  Json summary{{"version", kVersion},
               {"seed", seed},
               {"n_patterns", patterns.size()},
               {"converged", result.converged},
               {"sweeps", result.sweeps},
               {"recovered", result.pattern == patterns[0]}};
  writer.write_json("recall_summary.json", summary);
  writer.write_text("recall_trace.csv", trilat::io::recall_trace_csv(trace));
  Json pattern_dump = Json::array();
  for (const auto& p : patterns) pattern_dump.push_back(trilat::io::to_json(p));
  writer.write_json("patterns.json", pattern_dump);
  writer.write_json("memory.json", trilat::io::to_json(memory));
  writer.finish("recall-demo", run_info(text, seed));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-field system described three ways (classical, statistical, "
               "quantum) with collapse-placement experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";

  auto* count = app.add_subcommand("count", "Register accounting for a lattice config");
  count->add_option("--config", config_path, "lattice config file")->required();
  count->add_option("--out", out_dir, "output directory");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Evolve one description of the system");
  simulate->add_option("--config", sim.config_path, "lattice config file")->required();
  simulate->add_option("--out", sim.out_dir, "output directory");
  simulate->add_option("--mode", sim.mode, "classical | statistical | quantum");
  simulate->add_option("--steps", sim.steps, "number of steps (default: n_timesteps)");
  simulate->add_option("--initial", sim.initial_path, "initial state JSON file");
  simulate->add_option("--collapse-every", sim.collapse_every,
                       "quantum mode: full collapse every k steps (0 = never)");
  std::uint64_t sim_seed = 0;
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "random seed");

  auto* experiment = app.add_subcommand(
      "experiment", "Collapse-placement study or many-worlds bookkeeping");
  experiment->add_option("--config", config_path, "experiment config file")->required();
  experiment->add_option("--out", out_dir, "output directory");
  std::uint64_t exp_seed = 0;
  auto* exp_seed_opt = experiment->add_option("--seed", exp_seed, "random seed");

  auto* demo = app.add_subcommand("recall-demo", "Store patterns, corrupt a cue, recall");
  std::string demo_config;
  demo->add_option("--config", demo_config, "experiment config file (optional)");
  demo->add_option("--out", out_dir, "output directory");
  std::uint64_t demo_seed = 0;
  auto* demo_seed_opt = demo->add_option("--seed", demo_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfigError;
  }

  try {
    if (count->parsed()) return cmd_count(config_path, out_dir);
    if (simulate->parsed()) {
      if (*sim_seed_opt) sim.seed = sim_seed;
      if (sim.collapse_every > 0 && !sim.seed)
        throw trilat::ConfigError(
            "--seed is required when collapses are enabled (no wall-clock seeding)");
      return cmd_simulate(sim);
    }
    if (experiment->parsed()) {
      if (!*exp_seed_opt)
        throw trilat::ConfigError(
            "--seed is required for experiments (no wall-clock seeding)");
      return cmd_experiment(config_path, out_dir, exp_seed);
    }
    if (demo->parsed()) {
      if (!*demo_seed_opt)
        throw trilat::ConfigError(
            "--seed is required for recall-demo (no wall-clock seeding)");
      return cmd_recall_demo(demo_config, out_dir, demo_seed);
    }
  } catch (const trilat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const trilat::CapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const trilat::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariantViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantViolation;
  }
  return 0;
}
