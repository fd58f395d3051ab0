// Copyright 2026 The coorbit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COORBIT_TOOLS_CONFIG_HPP
#define COORBIT_TOOLS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "coorbit/opalg.hpp"

namespace coorbit::cli {

/// Any problem with the config document or command-line overrides. Maps to
/// exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SystemKind { spin, dps, homodyne, symplectic, su11 };

const char* to_string(SystemKind kind);
SystemKind system_from_string(const std::string& name);

using Value = std::variant<std::int64_t, double, std::vector<double>, std::string>;
using ValueMap = std::map<std::string, Value>;

struct StateSpec {
  std::string kind = "fock";  // fock | coherent | thermal | spin_coherent | random
  ValueMap fields;
  friend bool operator==(const StateSpec&, const StateSpec&) = default;
};

struct Outputs {
  std::optional<std::string> report;
  std::optional<std::string> csv;
  std::optional<std::string> state;
  friend bool operator==(const Outputs&, const Outputs&) = default;
};

struct Tolerances {
  std::optional<double> hs_error;  // upper bound
  std::optional<double> fidelity;  // lower bound
  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

/// Parsed run configuration. Only keys present in the document are stored;
/// defaults are applied by the typed getters, so serialization reproduces the
/// input key set.
struct RunConfig {
  SystemKind system = SystemKind::dps;
  ValueMap params;
  StateSpec state;
  Outputs outputs;
  Tolerances tolerances;

  std::int64_t get_int(const std::string& key) const;
  double get_real(const std::string& key) const;
  std::vector<double> get_list(const std::string& key) const;
  std::string get_choice(const std::string& key) const;
  bool has(const std::string& key) const { return params.count(key) != 0; }

  /// Hilbert-space dimension implied by the system parameters.
  Index dim() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const std::string& json_text);
std::string serialize_config(const RunConfig& config);

/// Config with every parameter at its default and a Fock vacuum state.
RunConfig default_config(SystemKind system);

/// Re-validates params and state against the (possibly overridden) system.
void validate(const RunConfig& config);

DensityMatrix make_state(const RunConfig& config);

}  // namespace coorbit::cli

#endif  // COORBIT_TOOLS_CONFIG_HPP
