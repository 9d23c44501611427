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
#include <vector>

#include "ringcav/hilbert.hpp"
#include "ringcav/model.hpp"
#include "ringcav/quantum_dynamics.hpp"

namespace ringcav {

class SteadyStateError : public std::runtime_error {
 public:
  SteadyStateError(const std::string& what, double residual, double time)
      : std::runtime_error(what), residual(residual), time(time) {}
  double residual;
  double time;
};

struct SteadyStateOptions {
  /// max |L(rho)| accepted as stationary [omega_rec].
  double residual_tolerance = 1e-7;
  /// max |rho(t + 1/kappa) - rho(t)| that ends the long-time run.
  double change_tolerance = 1e-8;
  double t_max = 200.0;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_trace_drift = 1e-6;
  /// Run the null-space method as well when the dimension is at most this.
  Index cross_check_max_dim = 200;
  double agreement_tolerance = 1e-5;

  void validate() const;
};

struct SteadyStateResult {
  DensityState rho;
  double residual = 0.0;
  std::string method;  ///< "long-time" or "null-space"
  double time = 0.0;   ///< evolution time until convergence
  std::size_t windows = 0;
  std::size_t accepted_steps = 0;
  std::size_t blocks = 0;
  /// Set when the generator has more than one stationary state; rho is then
  /// the fixed point reached from the starting state.
  bool degenerate = false;
  std::string degeneracy_note;
  /// Trace distance to the null-space solution, when that ran.
  std::optional<double> cross_check_distance;
  TruncationDiagnostics truncation;
};

/// Long-time evolution from rho0 until the state stops changing over a window
/// of 1/kappa and the residual is below tolerance. Small systems are checked
/// against the null-space solution; disagreement beyond the tolerance on a
/// non-degenerate generator throws SteadyStateError, as does failure to
/// converge before t_max.
SteadyStateResult steady_state(const Operator& h, const LatticeSpec& spec, double kappa,
                               const SteadyStateOptions& opts, const DensityState& rho0);
/// Starts from initial_state(spec).
SteadyStateResult steady_state(const Operator& h, const LatticeSpec& spec, double kappa,
                               const SteadyStateOptions& opts = {});

struct NullSpaceResult {
  DensityState rho;
  double residual = 0.0;
  bool degenerate = false;
};

/// Null vector of the vectorised Liouvillian by shifted inverse iteration
/// (sparse LU). Two different starting vectors that land on different
/// normalised states reveal a degenerate null space.
NullSpaceResult null_space_steady_state(const Operator& h, const std::vector<Jump>& jumps);

/// Column-stacked superoperator: vec(L(rho)) = L vec(rho).
SparseMatrix vectorized_liouvillian(const Operator& h, const std::vector<Jump>& jumps);

/// Copy rho onto another lattice with the same angle. Entries without a
/// counterpart are dropped and the trace is restored.
DensityState resize_state(const DensityState& rho, const LatticeSpec& from, const LatticeSpec& to);

}  // namespace ringcav
