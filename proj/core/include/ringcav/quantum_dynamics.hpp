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

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ringcav/hilbert.hpp"
#include "ringcav/model.hpp"

namespace ringcav {

class EvolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegratorConfig {
  double dt = 1e-3;  ///< initial step [1/omega_rec]
  double t_final = 1.0;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double record_interval = 0.1;
  /// 0 disables density-matrix checkpoints.
  double snapshot_interval = 0.0;
  /// |Tr rho - 1| above this aborts the run.
  double max_trace_drift = 1e-6;

  void validate() const;
};

/// Time series sampled on a common grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::pair<std::string, std::vector<double>>> series;
  std::vector<std::pair<double, DensityState>> snapshots;

  const std::vector<double>& column(const std::string& name) const;
  std::vector<double>& add_column(const std::string& name);
  bool has_column(const std::string& name) const;
};

/// Least-squares slope of a column over the samples with t0 <= t <= t1.
/// Throws std::invalid_argument with fewer than two samples in range.
double fit_slope(const Trajectory& traj, const std::string& column, double t0, double t1);

/// Largest finite-difference slope between consecutive samples.
double peak_slope(const Trajectory& traj, const std::string& column);

/// Population of the two outermost momentum shells and of the top Fock level
/// of each mode.
struct TruncationDiagnostics {
  double atom_boundary = 0.0;
  double plus_top = 0.0;
  double minus_top = 0.0;
  double worst() const;
};

TruncationDiagnostics check_truncation(const DensityState& rho, const LatticeSpec& spec);

/// |p = 0> (x) |0, 0>.
DensityState initial_state(const LatticeSpec& spec);

struct EvolutionResult {
  Trajectory trajectory;
  DensityState final_state;
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0;  ///< over all sample times
  TruncationDiagnostics worst_truncation;  ///< componentwise max over samples
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t blocks = 0;
};

/// Integrate the cavity master equation with adaptive Dormand-Prince steps.
/// rho is re-symmetrised after every accepted step; its trace is never
/// renormalised. Throws EvolutionError on trace drift and StepSizeUnderflow
/// when the step collapses.
///
/// Recorded columns: time, p_mean, n_plus, n_minus, theta_plus_abs,
/// theta_minus_abs, bunching_abs, log_negativity, field_plus_abs,
/// field_minus_abs, boundary_atom, boundary_plus, boundary_minus,
/// trace_error, min_eigenvalue.
EvolutionResult evolve(const DensityState& rho0, const Operator& h, const LatticeSpec& spec,
                       double kappa, const IntegratorConfig& cfg);

/// Plain propagation of a generic Lindblad generator to time t; used for
/// oracle comparisons on small spaces.
DensityState propagate(const DensityState& rho0, const Operator& h,
                       const std::vector<Jump>& jumps, double t, const IntegratorConfig& cfg);

}  // namespace ringcav
