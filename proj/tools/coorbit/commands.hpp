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

#ifndef COORBIT_TOOLS_COMMANDS_HPP
#define COORBIT_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace coorbit::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kToleranceFailure = 2 };

struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  std::optional<std::string> system;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;  // replaces tolerances.hs_error
};

/// Reads the config file (or starts from the defaults of --system) and
/// applies command-line overrides.
RunConfig load_config(const Overrides& overrides);

struct LadderEntry {
  double parameter;  // R, delta or theta_max depending on the system
  double hs_error;
  double fidelity;
};

struct Report {
  std::string system;
  Index dim = 0;
  double hs_error = 0.0;
  double fidelity = 0.0;
  std::optional<double> frame_A, frame_B;
  std::optional<bool> frame_certified;
  std::optional<cplx> admissibility;
  std::string ladder_parameter;
  std::vector<LadderEntry> ladder;
  bool passed = true;
  std::string hint;
};

Report run_tomography(const RunConfig& config);
std::string report_to_json(const Report& report);

/// CSV (or, for kind "samples", JSON) text for the given kind. Throws
/// ConfigError when the kind is not available for the configured system.
std::string emit(const RunConfig& config, const std::string& kind);

std::string state_to_json(const DensityMatrix& rho);

/// Full command-line entry point. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coorbit::cli

#endif  // COORBIT_TOOLS_COMMANDS_HPP
