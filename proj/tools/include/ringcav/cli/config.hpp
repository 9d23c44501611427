// Copyright 2026 The ringcav Authors
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

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ringcav/meanfield.hpp"
#include "ringcav/model.hpp"
#include "ringcav/quantum_dynamics.hpp"
#include "ringcav/steady_state.hpp"

namespace ringcav::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { dynamics, meanfield, sweep, wigner, compare };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

/// "a/b", "a" or "-a/b".
RationalAngle parse_angle(const std::string& s);
std::string angle_string(const RationalAngle& a);

struct LatticeConfig {
  int n_max = 0;
  int cutoff_plus = 0;
  int cutoff_minus = 0;
};

struct SweepConfig {
  double eta_min = 0.0;
  double eta_max = 24.0;
  int points = 13;
  std::vector<RationalAngle> angles{RationalAngle(0, 1), RationalAngle(1, 2)};
  bool grow_cutoffs = true;
  Index max_dimension = 6000;
  int ground_state_grid = 256;
};

struct RunConfig {
  Mode mode = Mode::dynamics;
  PhysicalParams physical;
  std::optional<LatticeConfig> lattice;
  IntegratorConfig integrator;
  MeanFieldConfig meanfield;
  std::vector<double> seed_sensitivity{1e-2, 1e-4};
  SteadyStateOptions steady;
  SweepConfig sweep;
  int wigner_points = 101;
  double truncation_limit = 1e-3;
  std::string output_dir;
  int threads = 1;
};

/// Parse a JSON document. Every physical field must be present, unknown keys
/// anywhere are rejected, and modes that build a quantum state need a
/// lattice section. Throws ConfigError.
RunConfig parse_config(const nlohmann::ordered_json& doc);
RunConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides = {});

/// Apply "dotted.key=value" to the document before parsing. The value is
/// read as JSON when possible and as a string otherwise.
void apply_override(nlohmann::ordered_json& doc, const std::string& assignment);

/// The fully resolved configuration, defaults included.
nlohmann::ordered_json to_json(const RunConfig& cfg);

}  // namespace ringcav::cli
