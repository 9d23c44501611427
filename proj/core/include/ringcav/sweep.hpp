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
#include <vector>

#include "ringcav/effective_potential.hpp"
#include "ringcav/observables.hpp"
#include "ringcav/steady_state.hpp"

namespace ringcav {

/// Wigner analysis of both reduced mode states of a steady state.
struct FieldAnalysis {
  WignerGrid wigner_plus;
  WignerGrid wigner_minus;
  FieldExtraction plus;
  FieldExtraction minus;
  /// Largest |<n|rho_mode|m>|, n != m.
  double coherence_plus = 0.0;
  double coherence_minus = 0.0;
};

/// Grids from wigner_default().
FieldAnalysis analyze_fields(const DensityState& rho, double annulus_threshold = kAnnulusThreshold,
                             int wigner_points = 101);

/// Steady-state symmetry probes: |<a_pm>| and |<e^{+-ikx(1 -+ sin phi)}>|.
struct SymmetryProbes {
  double field_plus = 0.0;
  double field_minus = 0.0;
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double max() const;
};
SymmetryProbes symmetry_probes(const DensityState& rho, const LatticeSpec& spec);

struct SweepOptions {
  PhysicalParams base;  ///< eta is replaced by each sweep value
  std::vector<double> etas;
  int n_max = 16;
  int cutoff_plus = 6;
  int cutoff_minus = 6;
  SteadyStateOptions steady;
  /// Boundary population that triggers a larger lattice.
  double truncation_limit = 1e-3;
  bool grow_cutoffs = true;
  Index max_dimension = 6000;
  int ground_state_grid = 256;

  void validate() const;
};

struct SweepPoint {
  double eta = 0.0;
  double alpha_plus = 0.0;   ///< |alpha_+^q| from the Wigner maximum
  double alpha_minus = 0.0;
  double contrast_plus = 0.0;
  double contrast_minus = 0.0;
  double theta_plus_gs = 0.0;   ///< |Theta_+| of the broken-symmetry ground state
  double theta_minus_gs = 0.0;
  double gs_energy = 0.0;
  double residual = 0.0;
  TruncationDiagnostics truncation;
  bool truncation_ok = true;
  bool degenerate = false;
  double coherence_plus = 0.0;
  double coherence_minus = 0.0;
  SymmetryProbes symmetry;
  double n_plus = 0.0;
  double n_minus = 0.0;
  double p_mean = 0.0;
  int n_max = 0;
  int cutoff_plus = 0;
  int cutoff_minus = 0;
  double time = 0.0;
  std::optional<double> cross_check_distance;
};

struct SweepResult {
  RationalAngle angle;
  std::vector<SweepPoint> points;
  /// Steady state and lattice of the last point.
  DensityState last_state;
  LatticeSpec last_lattice;
};

/// Warm-started chain over opts.etas in the given order. When a point's
/// boundary populations exceed the limit the lattice grows (4 momentum shells
/// or 2 Fock levels at a time) and the point is repeated, up to max_dimension.
SweepResult run_sweep(const SweepOptions& opts);

/// Independent chains on up to `threads` worker threads. Results keep the
/// input order; the first exception thrown by any chain is rethrown.
std::vector<SweepResult> run_sweeps(const std::vector<SweepOptions>& chains, int threads);

/// Sweep point and analysis for a single steady state.
SweepPoint analyze_point(const SteadyStateResult& ss, const LatticeSpec& spec,
                         const PhysicalParams& params, int ground_state_grid,
                         double truncation_limit);

/// eta_0, eta_0 + step, ... with `points` values spanning [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int points);

}  // namespace ringcav
