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

#include "trilat/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace trilat::io {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

long long parse_int(const ConfigDocument& doc, const std::string& key, long long fallback) {
  if (!doc.has(key)) return fallback;
  const std::string& raw = doc.values.at(key);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
  if (ec != std::errc{} || ptr != raw.data() + raw.size())
    throw ConfigError("line " + std::to_string(doc.lines.at(key)) + ": key '" + key +
                      "' needs an integer, got '" + raw + "'");
  return value;
}

double parse_real(const ConfigDocument& doc, const std::string& key, double fallback) {
  if (!doc.has(key)) return fallback;
  const std::string& raw = doc.values.at(key);
  try {
    std::size_t consumed = 0;
    const double value = std::stod(raw, &consumed);
    if (consumed != raw.size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(doc.lines.at(key)) + ": key '" + key +
                      "' needs a real number, got '" + raw + "'");
  }
}

// Doubles in CSV output use %.17g so rereads and reruns are byte-stable.
std::string format_double(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

const char* kLatticeKeys[] = {"n_sites",     "n_fields",        "half_range",
                              "n_timesteps", "neighbor_radius", "phase_rate"};
const char* kExperimentKeys[] = {
    "experiment", "n_neurons",  "n_patterns",           "cue_flips",
    "probe_flips", "probes_per_pattern", "policy",      "n_trials",
    "n_steps",    "n_seeds",    "separation_threshold", "mw_bias",
    "mw_branchings", "learning_rate", "max_recall_sweeps"};

bool known_key(const std::string& key, bool experiment) {
  for (const char* k : kLatticeKeys)
    if (key == k) return true;
  if (!experiment) return false;
  for (const char* k : kExperimentKeys)
    if (key == k) return true;
  return false;
}

void reject_unknown_keys(const ConfigDocument& doc, bool experiment) {
  for (const auto& [key, value] : doc.values) {
    if (!known_key(key, experiment))
      throw ConfigError("line " + std::to_string(doc.lines.at(key)) +
                        ": unknown key '" + key + "'");
  }
}

LatticeConfig lattice_from_document(const ConfigDocument& doc) {
  return LatticeConfig::make(
      static_cast<int>(parse_int(doc, "n_sites", 1)),
      static_cast<int>(parse_int(doc, "n_fields", 1)),
      static_cast<int>(parse_int(doc, "half_range", 0)),
      static_cast<int>(parse_int(doc, "n_timesteps", 1)),
      static_cast<int>(parse_int(doc, "neighbor_radius", 1)),
      parse_real(doc, "phase_rate", 0.0));
}

}  // namespace

ConfigDocument parse_config_document(const std::string& text) {
  ConfigDocument doc;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    if (doc.values.count(key))
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key +
                        "' (first on line " + std::to_string(doc.lines.at(key)) + ")");
    doc.values[key] = value;
    doc.lines[key] = line_no;
  }
  return doc;
}

LatticeConfig parse_lattice_config(const std::string& text) {
  const ConfigDocument doc = parse_config_document(text);
  reject_unknown_keys(doc, /*experiment=*/false);
  return lattice_from_document(doc);
}

std::string format_lattice_config(const LatticeConfig& cfg) {
  std::ostringstream out;
  out << "n_sites = " << cfg.n_sites << "\n";
  out << "n_fields = " << cfg.n_fields << "\n";
  out << "half_range = " << cfg.half_range << "\n";
  out << "n_timesteps = " << cfg.n_timesteps << "\n";
  out << "neighbor_radius = " << cfg.neighbor_radius << "\n";
  out << "phase_rate = " << format_double(cfg.phase_rate) << "\n";
  return out.str();
}

ExperimentConfig parse_experiment_config(const std::string& text) {
  const ConfigDocument doc = parse_config_document(text);
  reject_unknown_keys(doc, /*experiment=*/true);
  ExperimentConfig cfg;
  cfg.n_neurons = static_cast<int>(parse_int(doc, "n_neurons", cfg.n_neurons));
  // The lattice carries one slot per neuron unless the document overrides it.
  ConfigDocument lattice_doc = doc;
  if (!lattice_doc.has("n_sites")) {
    lattice_doc.values["n_sites"] = std::to_string(cfg.n_neurons);
    lattice_doc.lines["n_sites"] = 0;
  }
  if (!lattice_doc.has("half_range")) {
    lattice_doc.values["half_range"] = "1";
    lattice_doc.lines["half_range"] = 0;
  }
  cfg.lattice = lattice_from_document(lattice_doc);
  cfg.n_patterns = static_cast<int>(parse_int(doc, "n_patterns", cfg.n_patterns));
  cfg.cue_flips = static_cast<int>(parse_int(doc, "cue_flips", cfg.cue_flips));
  cfg.probe_flips = static_cast<int>(parse_int(doc, "probe_flips", cfg.probe_flips));
  cfg.probes_per_pattern =
      static_cast<int>(parse_int(doc, "probes_per_pattern", cfg.probes_per_pattern));
  if (doc.has("policy")) {
    try {
      cfg.policy = collapse_policy_from_string(doc.values.at("policy"));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(doc.lines.at("policy")) + ": " + e.what());
    }
  }
  cfg.n_trials = static_cast<int>(parse_int(doc, "n_trials", cfg.n_trials));
  cfg.n_steps = static_cast<int>(parse_int(doc, "n_steps", cfg.n_steps));
  cfg.n_seeds = static_cast<int>(parse_int(doc, "n_seeds", cfg.n_seeds));
  cfg.separation_threshold =
      parse_real(doc, "separation_threshold", cfg.separation_threshold);
  cfg.mw_bias = parse_real(doc, "mw_bias", cfg.mw_bias);
  cfg.mw_branchings = static_cast<int>(parse_int(doc, "mw_branchings", cfg.mw_branchings));
  cfg.learning_rate = parse_real(doc, "learning_rate", cfg.learning_rate);
  cfg.max_recall_sweeps =
      static_cast<int>(parse_int(doc, "max_recall_sweeps", cfg.max_recall_sweeps));
  cfg.validate();
  return cfg;
}

std::string experiment_kind(const std::string& text) {
  const ConfigDocument doc = parse_config_document(text);
  if (!doc.has("experiment")) return "collapse_level";
  const std::string kind = doc.values.at("experiment");
  if (kind != "collapse_level" && kind != "many_worlds")
    throw ConfigError("line " + std::to_string(doc.lines.at("experiment")) +
                      ": unknown experiment '" + kind + "'");
  return kind;
}

Json to_json(const RegisterReport& r) {
  Json j;
  j["classical_registers"] = r.classical_registers;
  j["classical_register_capacity"] = r.classical_register_capacity;
  j["statistical_registers"] = r.statistical_registers;
  j["quantum_registers"] = r.quantum_registers;
  return j;
}

Json to_json(const Ensemble& e) { return Json(e.probabilities); }

Json to_json(const AmplitudeVector& a) {
  Json j;
  j["moduli"] = a.moduli;
  j["phases"] = a.phases;
  return j;
}

Json to_json(const stats::ChiSquareReport& r) {
  Json j;
  j["statistic"] = r.statistic;
  j["dof"] = r.dof;
  j["critical_value"] = r.critical_value;
  j["pass"] = r.pass;
  return j;
}

Json to_json(const Pattern& p) {
  Json j;
  j["units"] = Json::array();
  for (std::int8_t u : p.units) j["units"].push_back(static_cast<int>(u));
  j["segments"] = Json::array();
  for (const Segment& s : p.segments) {
    const char* kind = s.kind == SegmentKind::body    ? "body"
                       : s.kind == SegmentKind::world ? "world"
                                                      : "belief";
    j["segments"].push_back({{"kind", kind}, {"begin", s.begin}, {"end", s.end}});
  }
  return j;
}

Json to_json(const SchemaMemory& m) {
  Json j;
  j["n_units"] = m.n_units;
  j["learning_rate"] = m.learning_rate;
  j["facilitation_threshold"] = m.facilitation_threshold;
  j["weights"] = Json::array();
  for (std::size_t a = 0; a < m.n_units; ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < m.n_units; ++b) row.push_back(m.weight(a, b));
    j["weights"].push_back(std::move(row));
  }
  return j;
}

Json to_json(const MetricsReport& r) {
  Json j;
  j["policy"] = r.policy;
  j["learning_score"] = r.learning_score;
  j["disruption_index"] = r.disruption_index;
  j["branch_count_trace"] = r.branch_count_trace;
  j["branch_weight_stats"] = {{"min", r.branch_weight_stats.min},
                              {"max", r.branch_weight_stats.max},
                              {"mean", r.branch_weight_stats.mean}};
  j["seed"] = r.seed;
  j["truncated"] = r.truncated;
  j["separated"] = r.separated;
  return j;
}

Json to_json(const SignTestSummary& s) {
  Json j;
  j["significance"] = s.significance;
  j["learning"] = {{"wins", s.learning.wins},
                   {"losses", s.learning.losses},
                   {"ties", s.learning.ties},
                   {"p_value", s.learning.p_value},
                   {"pass", s.learning_pass}};
  j["disruption"] = {{"wins", s.disruption.wins},
                     {"losses", s.disruption.losses},
                     {"ties", s.disruption.ties},
                     {"p_value", s.disruption.p_value},
                     {"pass", s.disruption_pass}};
  return j;
}

FieldConfiguration configuration_from_json(const Json& j, const LatticeConfig& cfg) {
  if (!j.is_array()) throw ConfigError("configuration must be a flat integer array");
  FieldConfiguration c;
  c.values.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ConfigError("configuration entries must be integers");
    c.values.push_back(v.get<std::int32_t>());
  }
  validate_configuration(c, cfg);
  return c;
}

DynamicalState dynamical_from_json(const Json& j, const LatticeConfig& cfg) {
  if (j.is_array()) {
    const FieldConfiguration c = configuration_from_json(j, cfg);
    return DynamicalState{c, c};
  }
  if (j.is_object() && j.contains("current") && j.contains("previous"))
    return DynamicalState{configuration_from_json(j.at("current"), cfg),
                          configuration_from_json(j.at("previous"), cfg)};
  throw ConfigError("initial state must be a flat array or {current, previous}");
}

std::string branch_weight_csv(const BranchSet& b) {
  std::ostringstream out;
  out << "label,weight\n";
  for (const Branch& br : b.branches)
    out << br.label << "," << format_double(std::norm(br.weight)) << "\n";
  return out.str();
}

std::string recall_trace_csv(const std::vector<RecallTraceRow>& trace) {
  std::ostringstream out;
  out << "sweep,unit,flipped,energy\n";
  for (const RecallTraceRow& row : trace)
    out << row.sweep << "," << row.unit << "," << (row.flipped ? 1 : 0) << ","
        << format_double(row.energy) << "\n";
  return out.str();
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char buffer[20];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

OutputWriter::OutputWriter(std::filesystem::path directory) : dir_(std::move(directory)) {
  std::filesystem::create_directories(dir_);
}

void OutputWriter::write_text(const std::string& filename, const std::string& text) {
  if (finished_) throw std::logic_error("OutputWriter: manifest already written");
  std::ofstream out(dir_ / filename, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + (dir_ / filename).string());
  out << text;
  out.close();
  emitted_.emplace_back(filename, content_hash(text));
}

void OutputWriter::write_json(const std::string& filename, const Json& j) {
  write_text(filename, j.dump(2) + "\n");
}

void OutputWriter::finish(const std::string& subcommand, const Json& run_info) {
  if (finished_) throw std::logic_error("OutputWriter: manifest already written");
  Json manifest;
  manifest["subcommand"] = subcommand;
  manifest["run"] = run_info;
  manifest["files"] = Json::array();
  for (const auto& [name, hash] : emitted_)
    manifest["files"].push_back({{"name", name}, {"hash", hash}});
  std::ofstream out(dir_ / "manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot open manifest.json");
  out << manifest.dump(2) << "\n";
  finished_ = true;
}

}  // namespace trilat::io
