// Copyright 2026 The dfsbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dfsbench/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace dfsbench {

namespace {

using nlohmann::json;

enum class KeyType { kInt, kUInt, kDouble, kBool, kString, kUIntList };

struct KeySpec {
  const char* name;
  KeyType type;
  double min;
  double max;
  const char* default_text;
  const char* doc;
};

struct KindSpec {
  ExperimentKind kind;
  const char* name;
  bool random;
  const char* summary;
  std::vector<KeySpec> keys;
};

const std::vector<KeySpec>& common_keys() {
  static const std::vector<KeySpec> keys{
      {"schema", KeyType::kString, 0, 0, kConfigSchema, "config schema tag; must equal the default if present"},
      {"experiment", KeyType::kString, 0, 0, "<subcommand>", "must match the subcommand if present"},
      {"seed", KeyType::kUInt, 0, 1.8e19, "none", "RNG seed; required for randomized experiments"},
      {"tol", KeyType::kDouble, 1e-15, 1e-3, "1e-10", "relative rank cutoff for closures and null spaces"},
      {"out", KeyType::kString, 0, 0, "dfsbench-out", "output directory"},
  };
  return keys;
}

const std::vector<KindSpec>& kind_specs() {
  static const std::vector<KindSpec> specs{
      {ExperimentKind::kDecompose, "decompose", false,
       "isotypic bookkeeping of N collective qubits: multiplicities, Casimir spectrum, algebra dimensions",
       {{"n_sites", KeyType::kInt, 1, 8, "2", "number of qubits N"}}},
      {ExperimentKind::kFindCode, "find-code", false,
       "noiseless code of the collective model (common null space of the generators)",
       {{"n_sites", KeyType::kInt, 1, 8, "2", "number of sites N"},
        {"local_dim", KeyType::kInt, 2, 4, "2", "site dimension d (closed-form checks only for d = 2)"}}},
      {ExperimentKind::kSymmetrize, "symmetrize", true,
       "symmetrizing projector: projector laws and agreement of the commutant, finite-group and Monte Carlo routes",
       {{"n_sites", KeyType::kInt, 1, 4, "2", "number of qubits N"},
        {"trials", KeyType::kInt, 1, 1000, "100", "random operators tested"},
        {"mc_samples", KeyType::kUInt, 0, 1e6, "100000", "Monte Carlo samples (0 disables, N <= 3 only)"}}},
      {ExperimentKind::kCertifyUniversality, "certify-universality", true,
       "symmetrized random Hamiltonian pairs restricted to the code generate u(C)",
       {{"n_sites", KeyType::kInt, 2, 6, "4", "even number of qubits N (N = 6 takes several minutes)"},
        {"trials", KeyType::kInt, 1, 200, "20", "independent seeds (seed, seed+1, ...)"}}},
      {ExperimentKind::kSynthesize, "synthesize", true,
       "invariant Hamiltonians for random logical unitaries, round trip and gauge invariance",
       {{"n_sites", KeyType::kInt, 2, 6, "4", "even number of qubits N (N = 6 takes several minutes)"},
        {"trials", KeyType::kInt, 1, 200, "20", "random targets"}}},
      {ExperimentKind::kSimulate, "simulate", true,
       "exact joint evolution of code states under random collective noise models",
       {{"n_sites", KeyType::kInt, 2, 4, "2", "even number of qubits N (2 or 4)"},
        {"env_dim", KeyType::kUInt, 1, 8, "2", "environment dimension"},
        {"coupling_strength", KeyType::kDouble, 1e-6, 10, "1.0", "scale of the B_alpha"},
        {"trials", KeyType::kInt, 1, 100, "10", "random noise models"},
        {"time_samples", KeyType::kUInt, 1, 10000, "100", "sampled times per trajectory"},
        {"t_max", KeyType::kDouble, 1e-6, 1e3, "10.0", "last sampled time"}}},
      {ExperimentKind::kPulseSim, "pulse-sim", true,
       "bang-bang symmetrization: convergence to the symmetrized gate and leakage suppression under noise",
       {{"n_sites", KeyType::kInt, 2, 3, "2", "number of qubits N (N = 2 uses the Q/P group, N = 3 the glued group)"},
        {"cycle_ladder", KeyType::kUIntList, 1, 1e7, "[4000, 8000, 16000, 32000, 64000]",
         "cycle counts, each double the previous"},
        {"total_time", KeyType::kDouble, 1e-6, 1e3, "1.0", "gate time T (the gate Hamiltonian has unit spectral norm)"},
        {"tau_op", KeyType::kDouble, 0, 1, "0.0", "pulse duration (noise-only evolution per pulse)"},
        {"ordering", KeyType::kString, 0, 0, "list", "cycle ordering: list | palindromic"},
        {"with_noise", KeyType::kBool, 0, 0, "true", "also run the leakage comparison under a noise model"},
        {"env_dim", KeyType::kUInt, 1, 8, "2", "environment dimension"},
        {"coupling_strength", KeyType::kDouble, 1e-6, 10, "1.0", "scale of the B_alpha"}}},
      {ExperimentKind::kAncilla, "ancilla", true,
       "ancilla-assisted application of a unitary in the permutation group algebra",
       {{"n_sites", KeyType::kInt, 2, 4, "2", "number of qubits N"},
        {"trials", KeyType::kInt, 1, 200, "10", "random unitary programs"}}},
  };
  return specs;
}

const KindSpec& spec_for(ExperimentKind kind) {
  for (const auto& s : kind_specs()) {
    if (s.kind == kind) return s;
  }
  throw ConfigError("unknown experiment kind");
}

const char* type_name(KeyType t) {
  switch (t) {
    case KeyType::kInt: return "int";
    case KeyType::kUInt: return "uint";
    case KeyType::kDouble: return "float";
    case KeyType::kBool: return "bool";
    case KeyType::kString: return "string";
    case KeyType::kUIntList: return "list of uint";
  }
  return "?";
}

void check_value(const KeySpec& spec, const json& v) {
  const std::string where = std::string("key '") + spec.name + "'";
  const auto in_range = [&](double x) {
    if (x < spec.min || x > spec.max) {
      std::ostringstream msg;
      msg << where << ": value " << x << " outside [" << spec.min << ", " << spec.max << "]";
      throw ConfigError(msg.str());
    }
  };
  switch (spec.type) {
    case KeyType::kInt:
      if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
      in_range(v.get<double>());
      break;
    case KeyType::kUInt:
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw ConfigError(where + ": expected a non-negative integer");
      }
      in_range(v.get<double>());
      break;
    case KeyType::kDouble:
      if (!v.is_number()) throw ConfigError(where + ": expected a number");
      in_range(v.get<double>());
      break;
    case KeyType::kBool:
      if (!v.is_boolean()) throw ConfigError(where + ": expected true or false");
      break;
    case KeyType::kString:
      if (!v.is_string()) throw ConfigError(where + ": expected a string");
      break;
    case KeyType::kUIntList:
      if (!v.is_array() || v.empty()) throw ConfigError(where + ": expected a non-empty list");
      for (const auto& e : v) {
        if (!e.is_number_unsigned()) throw ConfigError(where + ": entries must be non-negative integers");
        in_range(e.get<double>());
      }
      break;
  }
}

}  // namespace

std::string_view to_string(ExperimentKind kind) { return spec_for(kind).name; }

std::optional<ExperimentKind> parse_kind(std::string_view name) {
  for (const auto& s : kind_specs()) {
    if (name == s.name) return s.kind;
  }
  return std::nullopt;
}

const std::vector<ExperimentKind>& all_kinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> out;
    for (const auto& s : kind_specs()) out.push_back(s.kind);
    return out;
  }();
  return kinds;
}

bool uses_randomness(ExperimentKind kind) { return spec_for(kind).random; }

ExperimentConfig parse_config(ExperimentKind kind, const json& doc, std::optional<std::uint64_t> seed_override,
                              std::optional<std::string> out_override, std::optional<double> tol_override) {
  if (!doc.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  const KindSpec& spec = spec_for(kind);
  const auto find_spec = [&](const std::string& key) -> const KeySpec* {
    for (const auto& k : common_keys()) {
      if (key == k.name) return &k;
    }
    for (const auto& k : spec.keys) {
      if (key == k.name) return &k;
    }
    return nullptr;
  };
  for (const auto& [key, value] : doc.items()) {
    const KeySpec* ks = find_spec(key);
    if (ks == nullptr) {
      throw ConfigError("unknown key '" + key + "' for experiment " + spec.name);
    }
    check_value(*ks, value);
  }

  if (doc.contains("schema") && doc["schema"] != kConfigSchema) {
    throw ConfigError(std::string("unsupported schema; expected ") + kConfigSchema);
  }
  if (doc.contains("experiment") && doc["experiment"] != spec.name) {
    throw ConfigError("config is for experiment '" + doc["experiment"].get<std::string>() + "', not " + spec.name);
  }

  ExperimentConfig cfg;
  cfg.kind = kind;
  cfg.n_sites = doc.value("n_sites", kind == ExperimentKind::kCertifyUniversality ||
                                             kind == ExperimentKind::kSynthesize
                                         ? 4
                                         : 2);
  cfg.local_dim = doc.value("local_dim", 2);
  cfg.env_dim = doc.value("env_dim", std::size_t{2});
  cfg.coupling_strength = doc.value("coupling_strength", 1.0);
  cfg.tol = doc.value("tol", 1e-10);
  cfg.out_dir = doc.value("out", std::string("dfsbench-out"));
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
  switch (kind) {
    case ExperimentKind::kSymmetrize: cfg.trials = 100; break;
    case ExperimentKind::kCertifyUniversality:
    case ExperimentKind::kSynthesize: cfg.trials = 20; break;
    case ExperimentKind::kSimulate:
    case ExperimentKind::kAncilla: cfg.trials = 10; break;
    default: cfg.trials = 0; break;
  }
  cfg.trials = doc.value("trials", cfg.trials);
  cfg.mc_samples = doc.value("mc_samples", kind == ExperimentKind::kSymmetrize ? std::size_t{100000} : std::size_t{0});
  cfg.time_samples = doc.value("time_samples", std::size_t{100});
  cfg.t_max = doc.value("t_max", 10.0);
  if (kind == ExperimentKind::kPulseSim) {
    cfg.cycle_ladder = doc.value("cycle_ladder", std::vector<std::size_t>{4000, 8000, 16000, 32000, 64000});
  }
  cfg.total_time = doc.value("total_time", 1.0);
  cfg.tau_op = doc.value("tau_op", 0.0);
  cfg.ordering = doc.value("ordering", std::string("list"));
  cfg.with_noise = doc.value("with_noise", true);

  if (seed_override) cfg.seed = seed_override;
  if (out_override) cfg.out_dir = *out_override;
  if (tol_override) {
    if (!(*tol_override >= 1e-15 && *tol_override <= 1e-3)) {
      throw ConfigError("--tol outside [1e-15, 1e-3]");
    }
    cfg.tol = *tol_override;
  }

  // Cross-field rules.
  if (spec.random && !cfg.seed) {
    throw ConfigError(std::string("experiment ") + spec.name + " uses randomness and requires a seed");
  }
  if ((kind == ExperimentKind::kCertifyUniversality || kind == ExperimentKind::kSynthesize ||
       kind == ExperimentKind::kSimulate) &&
      cfg.n_sites % 2 != 0) {
    throw ConfigError("n_sites must be even so that the code is non-empty");
  }
  if (kind == ExperimentKind::kSymmetrize && cfg.mc_samples > 0 && cfg.n_sites > 3) {
    throw ConfigError("mc_samples requires n_sites <= 3");
  }
  if (cfg.ordering != "list" && cfg.ordering != "palindromic") {
    throw ConfigError("ordering must be 'list' or 'palindromic'");
  }
  if (kind == ExperimentKind::kPulseSim) {
    if (cfg.cycle_ladder.size() < 2) {
      throw ConfigError("cycle_ladder needs at least two entries");
    }
    for (std::size_t i = 1; i < cfg.cycle_ladder.size(); ++i) {
      if (cfg.cycle_ladder[i] != 2 * cfg.cycle_ladder[i - 1]) {
        throw ConfigError("cycle_ladder entries must double at each step");
      }
    }
  }
  if (cfg.out_dir.empty()) {
    throw ConfigError("output directory must not be empty");
  }
  return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
  json j{{"schema", kConfigSchema},
         {"experiment", std::string(dfsbench::to_string(kind))},
         {"seed", seed ? json(*seed) : json(nullptr)},
         {"tol", tol},
         {"out", out_dir}};
  for (const auto& key : spec_for(kind).keys) {
    const std::string name = key.name;
    if (name == "n_sites") j[name] = n_sites;
    else if (name == "local_dim") j[name] = local_dim;
    else if (name == "env_dim") j[name] = env_dim;
    else if (name == "coupling_strength") j[name] = coupling_strength;
    else if (name == "trials") j[name] = trials;
    else if (name == "mc_samples") j[name] = mc_samples;
    else if (name == "time_samples") j[name] = time_samples;
    else if (name == "t_max") j[name] = t_max;
    else if (name == "cycle_ladder") j[name] = cycle_ladder;
    else if (name == "total_time") j[name] = total_time;
    else if (name == "tau_op") j[name] = tau_op;
    else if (name == "ordering") j[name] = ordering;
    else if (name == "with_noise") j[name] = with_noise;
  }
  return j;
}

std::string list_experiments() {
  std::ostringstream out;
  out << "dfsbench experiment catalog (" << kConfigSchema << ")\n\n";
  out << "common keys:\n";
  for (const auto& k : common_keys()) {
    out << "  " << k.name << " (" << type_name(k.type) << ", optional, default " << k.default_text
        << "): " << k.doc << "\n";
  }
  for (const auto& s : kind_specs()) {
    out << "\n" << s.name << "\n  " << s.summary << "\n";
    out << "  required: " << (s.random ? "seed" : "none") << "\n";
    for (const auto& k : s.keys) {
      out << "  " << k.name << " (" << type_name(k.type) << ", optional, default " << k.default_text << "): "
          << k.doc << "\n";
    }
  }
  return out.str();
}

}  // namespace dfsbench
