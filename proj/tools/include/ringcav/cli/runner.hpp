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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ringcav/cli/config.hpp"

namespace ringcav::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kConvergenceError = 3,
  kTruncationError = 4,
};

struct Artifact {
  std::string name;
  std::string content;
};

/// Everything a run produces, held in memory until committed.
struct RunOutcome {
  int exit_code = kOk;
  std::vector<Artifact> files;
  nlohmann::ordered_json manifest;
};

/// Run the configured mode. Exceptions from the numerics propagate; a
/// truncation diagnostic above the limit is reported through exit_code with
/// the artifacts still populated.
RunOutcome execute(const RunConfig& cfg);

/// Create the directory and write every artifact plus manifest.json, each
/// through a temporary file that is renamed into place.
void commit(const RunOutcome& outcome, const std::filesystem::path& dir);

/// Command line entry point; returns the process exit status.
int run_main(int argc, char** argv);

}  // namespace ringcav::cli
